#include "cdia/params.hpp"

#include <cmath>
#include <set>

#include "cdia/error.hpp"

namespace cdia {

std::string to_string(ScaleMode mode) {
  return mode == ScaleMode::PaperFormula ? "paper-formula" : "practical-override";
}

ParameterSet ParameterSet::paper_formula(double C1, double C, double D, double delta, double eta,
                                         double epsilon, std::size_t n, std::size_t N) {
  if (n < 2 || N < 2) throw ArgumentError("paper-formula parameters need n >= 2 and N >= 2");
  ParameterSet p;
  p.scale_mode = ScaleMode::PaperFormula;
  p.C1 = C1;
  p.C = C;
  p.D = D;
  p.delta = delta;
  p.eta = eta;
  p.epsilon = epsilon;
  const double nn = static_cast<double>(n);
  p.tau = 10.0 * std::sqrt(C * D) * std::pow(nn, 0.25);
  p.t_nice = std::pow(C, 1.1) * std::pow(nn, 1.25) * std::log(nn);
  p.L_max = static_cast<std::size_t>(std::ceil(2.0 * std::log(static_cast<double>(N)) / delta));
  p.even_odd_min_degree = std::pow(C, 2.5) * std::sqrt(nn);
  p.validate(N);
  return p;
}

void ParameterSet::validate(std::size_t N) const {
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ArgumentError(std::string(name) + " must be positive and finite");
  };
  positive(C1, "C1");
  positive(C, "C");
  positive(D, "D");
  positive(delta, "delta");
  positive(eta, "eta");
  positive(epsilon, "epsilon");
  if (!(tau > 0.0)) throw ArgumentError("tau must be positive");
  if (!(t_nice >= 1.0)) throw ArgumentError("t_nice must be at least 1");
  if (L_max < 1) throw ArgumentError("L_max must be at least 1");
  if (!(epsilon < 1.0)) throw ArgumentError("epsilon must be below 1");
  if (!(epsilon > eta)) throw ArgumentError("need epsilon > eta");
  if (!(eta > delta)) throw ArgumentError("need eta > delta");
  if (!(delta > 1.0 / D)) throw ArgumentError("need delta > 1/D");
  if (!(1.0 / D > 1.0 / C1)) throw ArgumentError("need 1/D > 1/C1");
  if (!(expander_max_frac > 0.0 && expander_max_frac < 1.0)) {
    throw ArgumentError("expander_max_frac must lie in (0, 1)");
  }
  if (!(fan_target_frac > 0.0 && fan_target_frac <= 1.0)) {
    throw ArgumentError("fan_target_frac must lie in (0, 1]");
  }
  if (direct_max_cycle < 3) throw ArgumentError("direct_max_cycle must be at least 3");
  if (scale_mode == ScaleMode::PaperFormula && N > 0 && t_nice >= static_cast<double>(N)) {
    throw ArgumentError("paper-formula t_nice = " + std::to_string(t_nice) + " is not below N = " +
                        std::to_string(N) + "; the niceness cap is vacuous, use practical-override mode");
  }
}

double ParameterSet::robust_budget_per_vertex(std::size_t host_n) const {
  return delta * C * C * C * std::sqrt(static_cast<double>(host_n));
}

nlohmann::json to_json(const ParameterSet& p) {
  return {
      {"scale_mode", to_string(p.scale_mode)},
      {"C1", p.C1},
      {"C", p.C},
      {"D", p.D},
      {"delta", p.delta},
      {"eta", p.eta},
      {"epsilon", p.epsilon},
      {"tau", p.tau},
      {"t_nice", p.t_nice},
      {"L_max", p.L_max},
      {"finder_roots", p.finder_roots},
      {"finder_z_samples", p.finder_z_samples},
      {"even_odd_min_degree", p.even_odd_min_degree},
      {"fan_target_frac", p.fan_target_frac},
      {"expander_max_frac", p.expander_max_frac},
      {"expander_seeds", p.expander_seeds},
      {"expander_grow_limit", p.expander_grow_limit},
      {"max_gamma_edges", p.max_gamma_edges},
      {"direct_max_cycle", p.direct_max_cycle},
      {"direct_budget", p.direct_budget},
  };
}

ParameterSet params_from_json(const nlohmann::json& j, const ParameterSet& base) {
  if (!j.is_object()) throw ArgumentError("parameter set must be a JSON object");
  ParameterSet p = base;
  static const std::set<std::string> known = {
      "scale_mode", "C1", "C", "D", "delta", "eta", "epsilon", "tau", "t_nice", "L_max",
      "finder_roots", "finder_z_samples", "even_odd_min_degree", "fan_target_frac",
      "expander_max_frac", "expander_seeds", "expander_grow_limit", "max_gamma_edges",
      "direct_max_cycle", "direct_budget"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ArgumentError("unknown parameter \"" + key + "\"");
  }
  try {
    if (j.contains("scale_mode")) {
      const auto mode = j.at("scale_mode").get<std::string>();
      if (mode == "paper-formula") {
        p.scale_mode = ScaleMode::PaperFormula;
      } else if (mode == "practical-override") {
        p.scale_mode = ScaleMode::PracticalOverride;
      } else {
        throw ArgumentError("unknown scale_mode \"" + mode + "\"");
      }
    }
    auto read = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    read("C1", p.C1);
    read("C", p.C);
    read("D", p.D);
    read("delta", p.delta);
    read("eta", p.eta);
    read("epsilon", p.epsilon);
    read("tau", p.tau);
    read("t_nice", p.t_nice);
    read("L_max", p.L_max);
    read("finder_roots", p.finder_roots);
    read("finder_z_samples", p.finder_z_samples);
    read("even_odd_min_degree", p.even_odd_min_degree);
    read("fan_target_frac", p.fan_target_frac);
    read("expander_max_frac", p.expander_max_frac);
    read("expander_seeds", p.expander_seeds);
    read("expander_grow_limit", p.expander_grow_limit);
    read("max_gamma_edges", p.max_gamma_edges);
    read("direct_max_cycle", p.direct_max_cycle);
    read("direct_budget", p.direct_budget);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad parameter value: ") + e.what());
  }
  return p;
}

}  // namespace cdia
