#include "auvfl/rbf.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <type_traits>

namespace auvfl::rbf {

namespace {

Eigen::VectorXd linspace(double lo, double hi, int count) {
  Eigen::VectorXd v(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) v(i) = lo + step * static_cast<double>(i);
  v(count - 1) = hi;  // pin the endpoint exactly
  return v;
}

}  // namespace

RbfNetwork build_grid_network(const std::vector<std::array<double, 2>>& bounds,
                              const std::vector<int>& counts, double width,
                              int n_channels) {
  if (bounds.size() != counts.size() || bounds.empty()) {
    raise(Errc::BadCount, "bounds and counts must align and be non-empty");
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    raise(Errc::BadBounds, "width must be positive and finite");
  }
  if (n_channels < 1) {
    raise(Errc::BadCount, "need at least one weight channel");
  }
  RbfNetwork net;
  net.bounds = bounds;
  net.counts = counts;
  net.width = width;
  long n_nodes = 1;
  for (size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] < 2) {
      raise(Errc::BadCount, "axis " + std::to_string(a) +
                                " count must be >= 2, got " +
                                std::to_string(counts[a]));
    }
    if (!(bounds[a][0] < bounds[a][1]) || !std::isfinite(bounds[a][0]) ||
        !std::isfinite(bounds[a][1])) {
      raise(Errc::BadBounds, "axis " + std::to_string(a) +
                                 " bounds must satisfy lo < hi");
    }
    net.axes.push_back(linspace(bounds[a][0], bounds[a][1], counts[a]));
    n_nodes *= counts[a];
  }
  const int q = static_cast<int>(counts.size());
  net.centers.resize(n_nodes, q);
  std::vector<int> idx(static_cast<size_t>(q), 0);
  for (long j = 0; j < n_nodes; ++j) {
    for (int a = 0; a < q; ++a) {
      net.centers(j, a) = net.axes[static_cast<size_t>(a)](idx[static_cast<size_t>(a)]);
    }
    // odometer increment, last axis fastest
    for (int a = q - 1; a >= 0; --a) {
      if (++idx[static_cast<size_t>(a)] < counts[static_cast<size_t>(a)]) break;
      idx[static_cast<size_t>(a)] = 0;
    }
  }
  net.weights = Eigen::MatrixXd::Zero(n_nodes, n_channels);
  return net;
}

void regressor_lattice(const std::vector<Eigen::VectorXd>& axes, double width,
                       const Eigen::VectorXd& Z, Eigen::VectorXd& out) {
  // scratch reused across calls; evaluation stays pure
  thread_local std::vector<Eigen::VectorXd> per_axis;
  thread_local Eigen::VectorXd acc, next;

  const int q = static_cast<int>(axes.size());
  const double inv_w2 = 1.0 / (width * width);
  per_axis.resize(axes.size());
  for (int a = 0; a < q; ++a) {
    const Eigen::VectorXd& g = axes[static_cast<size_t>(a)];
    Eigen::VectorXd& e = per_axis[static_cast<size_t>(a)];
    e.resize(g.size());
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      const double d = Z(a) - g(k);
      e(k) = std::exp(-d * d * inv_w2);
    }
  }
  acc = per_axis[0];
  for (int a = 1; a < q; ++a) {
    const Eigen::VectorXd& e = per_axis[static_cast<size_t>(a)];
    next.resize(acc.size() * e.size());
    Eigen::Index pos = 0;
    for (Eigen::Index i = 0; i < acc.size(); ++i) {
      for (Eigen::Index k = 0; k < e.size(); ++k) {
        next(pos++) = acc(i) * e(k);
      }
    }
    acc.swap(next);
  }
  out = acc;
}

Eigen::VectorXd regressor(const RbfNetwork& net, const Eigen::VectorXd& Z) {
  if (Z.size() != net.centers.cols()) {
    raise(Errc::DimensionMismatch,
          "input has dim " + std::to_string(Z.size()) + ", network expects " +
              std::to_string(net.centers.cols()));
  }
  if (!net.axes.empty()) {
    Eigen::VectorXd out;
    regressor_lattice(net.axes, net.width, Z, out);
    return out;
  }
  return regressor_direct(net, Z);
}

Eigen::VectorXd regressor_direct(const RbfNetwork& net,
                                 const Eigen::VectorXd& Z) {
  if (Z.size() != net.centers.cols()) {
    raise(Errc::DimensionMismatch,
          "input has dim " + std::to_string(Z.size()) + ", network expects " +
              std::to_string(net.centers.cols()));
  }
  const double inv_w2 = 1.0 / (net.width * net.width);
  Eigen::VectorXd S(net.n_nodes());
  for (Eigen::Index j = 0; j < S.size(); ++j) {
    const double d2 = (Z.transpose() - net.centers.row(j)).squaredNorm();
    S(j) = std::exp(-d2 * inv_w2);
  }
  return S;
}

Eigen::Vector3d nn_output(const RbfNetwork& net, const Eigen::VectorXd& Z) {
  if (net.n_channels() != 3) {
    raise(Errc::DimensionMismatch, "nn_output needs a 3-channel network, got " +
                                       std::to_string(net.n_channels()));
  }
  const Eigen::VectorXd S = regressor(net, Z);
  return net.weights.transpose() * S;
}

Eigen::MatrixXd average_weights(const WeightSeries& series, double t_a,
                                double t_b) {
  if (!(t_b > t_a)) {
    raise(Errc::EmptyWindow, "need t_b > t_a");
  }
  Eigen::MatrixXd sum;
  long count = 0;
  for (size_t k = 0; k < series.t.size(); ++k) {
    if (series.t[k] < t_a || series.t[k] > t_b) continue;
    if (count == 0) {
      sum = series.w[k];
    } else {
      sum += series.w[k];
    }
    ++count;
  }
  if (count < 2) {
    raise(Errc::EmptyWindow, "window [" + std::to_string(t_a) + ", " +
                                 std::to_string(t_b) + "] holds " +
                                 std::to_string(count) +
                                 " snapshots, need at least 2");
  }
  return sum / static_cast<double>(count);
}

uint32_t crc32(const void* data, size_t len, uint32_t seed) {
  static const auto table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) {
        c = (c & 1u) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
      }
      t[i] = c;
    }
    return t;
  }();
  uint32_t c = seed ^ 0xFFFFFFFFu;
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    c = table[(c ^ p[i]) & 0xFFu] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

namespace {

constexpr char kMagic[4] = {'R', 'B', 'F', 'W'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::string& buf, const T& value) {
  static_assert(std::is_trivially_copyable_v<T>);
  const size_t at = buf.size();
  buf.resize(at + sizeof(T));
  std::memcpy(buf.data() + at, &value, sizeof(T));
}

template <typename T>
T take(const std::string& buf, size_t& at) {
  if (at + sizeof(T) > buf.size()) {
    raise(Errc::ChecksumMismatch, "file truncated inside payload");
  }
  T value;
  std::memcpy(&value, buf.data() + at, sizeof(T));
  at += sizeof(T);
  return value;
}

}  // namespace

void save_weights(const RbfNetwork& net, const std::string& path) {
  std::string payload;
  payload.append(kMagic, sizeof(kMagic));
  put(payload, kVersion);
  put(payload, static_cast<uint32_t>(net.input_dim()));
  for (int c : net.counts) put(payload, static_cast<uint32_t>(c));
  for (const auto& b : net.bounds) {
    put(payload, b[0]);
    put(payload, b[1]);
  }
  put(payload, net.width);
  put(payload, static_cast<uint32_t>(net.n_channels()));
  for (int k = 0; k < net.n_channels(); ++k) {
    for (Eigen::Index j = 0; j < net.weights.rows(); ++j) {
      put(payload, net.weights(j, k));
    }
  }
  const uint32_t crc = crc32(payload.data(), payload.size());
  put(payload, crc);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::IoError, "cannot open '" + path + "' for writing");
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) raise(Errc::IoError, "short write to '" + path + "'");
}

RbfNetwork load_weights(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());

  if (buf.size() < sizeof(kMagic) + sizeof(uint32_t) ||
      std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0) {
    raise(Errc::FormatVersionMismatch, "not a weights file (bad magic)");
  }
  size_t at = sizeof(kMagic);
  const auto version = take<uint32_t>(buf, at);
  if (version != kVersion) {
    raise(Errc::FormatVersionMismatch,
          "format version " + std::to_string(version) + ", expected " +
              std::to_string(kVersion));
  }
  const auto q = take<uint32_t>(buf, at);
  if (q == 0 || q > 16) {
    raise(Errc::FormatVersionMismatch,
          "input_dim field " + std::to_string(q) + " out of range");
  }
  std::vector<int> counts;
  long n_nodes = 1;
  for (uint32_t a = 0; a < q; ++a) {
    const auto c = take<uint32_t>(buf, at);
    if (c < 2 || c > 100000) {
      raise(Errc::FormatVersionMismatch,
            "counts field for axis " + std::to_string(a) + " is " +
                std::to_string(c) + ", expected 2..100000");
    }
    counts.push_back(static_cast<int>(c));
    n_nodes *= c;
  }
  std::vector<std::array<double, 2>> bounds;
  for (uint32_t a = 0; a < q; ++a) {
    const auto lo = take<double>(buf, at);
    const auto hi = take<double>(buf, at);
    if (!(lo < hi)) {
      raise(Errc::FormatVersionMismatch,
            "bounds field for axis " + std::to_string(a) +
                " must satisfy lo < hi");
    }
    bounds.push_back({lo, hi});
  }
  const auto width = take<double>(buf, at);
  if (!(width > 0.0)) {
    raise(Errc::FormatVersionMismatch, "width field must be positive");
  }
  const auto channels = take<uint32_t>(buf, at);
  if (channels == 0 || channels > 64) {
    raise(Errc::FormatVersionMismatch,
          "channel count field " + std::to_string(channels) + " out of range");
  }

  const size_t expect =
      at + sizeof(double) * static_cast<size_t>(n_nodes) * channels +
      sizeof(uint32_t);
  if (buf.size() != expect) {
    raise(Errc::ChecksumMismatch,
          "payload size " + std::to_string(buf.size()) + " does not match " +
              std::to_string(expect) + " implied by the counts fields");
  }
  const uint32_t stored = [&] {
    size_t tail = buf.size() - sizeof(uint32_t);
    return take<uint32_t>(buf, tail);
  }();
  const uint32_t actual = crc32(buf.data(), buf.size() - sizeof(uint32_t));
  if (stored != actual) {
    raise(Errc::ChecksumMismatch, "stored CRC does not match payload");
  }

  RbfNetwork net = build_grid_network(bounds, counts, width,
                                      static_cast<int>(channels));
  for (uint32_t k = 0; k < channels; ++k) {
    for (long j = 0; j < n_nodes; ++j) {
      net.weights(j, static_cast<int>(k)) = take<double>(buf, at);
    }
  }
  return net;
}

}  // namespace auvfl::rbf
