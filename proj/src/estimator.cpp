#include "auvfl/estimator.hpp"

namespace auvfl::estimator {

namespace {

[[noreturn]] void missing(Errc c, int i, int j, const char* what) {
  raise(c, "agent " + std::to_string(i) + " needs node " + std::to_string(j) +
               "'s " + what);
}

}  // namespace

ObserverDerivative observer_derivative(
    int i, const ObserverState& own,
    const std::map<int, ObserverState>& neighbor_states,
    const graph::Topology& t, const ObserverGains& g) {
  auto lookup = [&](int j) -> const ObserverState& {
    const auto it = neighbor_states.find(j);
    if (it == neighbor_states.end()) {
      missing(Errc::MissingNeighbor, i, j, "observer state");
    }
    return it->second;
  };
  ObserverDerivative d;
  observer_rates_core(
      i, own.chi_hat, own.A_hat,
      [&](int j) -> Vec6 { return lookup(j).chi_hat; },
      [&](int j) -> Mat6 { return lookup(j).A_hat; }, t, g, d.chi_hat_dot,
      d.A_hat_dot);
  return d;
}

Vec6 observer_second_derivative(
    int i, const std::map<int, ObserverDerivative>& all_derivatives,
    const ObserverState& own, const graph::Topology& t,
    const ObserverGains& g) {
  const auto own_it = all_derivatives.find(i);
  if (own_it == all_derivatives.end()) {
    raise(Errc::MissingNeighborDerivative,
          "agent " + std::to_string(i) + "'s own first derivative missing");
  }
  const ObserverDerivative& own_d = own_it->second;
  return observer_accel_core(
      i, own.chi_hat, own.A_hat, own_d.chi_hat_dot, own_d.A_hat_dot,
      [&](int j) -> Vec6 {
        const auto it = all_derivatives.find(j);
        if (it == all_derivatives.end()) {
          missing(Errc::MissingNeighborDerivative, i, j, "first derivative");
        }
        return it->second.chi_hat_dot;
      },
      t, g);
}

std::vector<std::pair<double, double>> estimation_errors(
    const std::vector<ObserverState>& states, const dynamics::LeaderModel& l) {
  std::vector<std::pair<double, double>> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    out.emplace_back((s.chi_hat - l.chi0).norm(), (s.A_hat - l.A0).norm());
  }
  return out;
}

}  // namespace auvfl::estimator
