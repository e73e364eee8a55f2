#include "gadi/bench/presets.hpp"

#include <functional>
#include <map>

namespace gadi {

namespace {

constexpr double kPresetTol = 1e-5;
const std::vector<Index> kTableSizes{8, 16, 24, 32, 48};

const std::vector<Algorithm> kComparison{Algorithm::mhss,  Algorithm::pmhss_w, Algorithm::pmhss_i,
                                         Algorithm::cri,   Algorithm::tscsp,   Algorithm::gadi};

RunConfig base_config() {
  RunConfig c;
  c.tol = kPresetTol;
  c.max_outer = 1000;
  c.inner = InnerMode::exact;
  c.policy.kind = PolicyKind::auto_alpha;
  c.policy.omega = 0.01;
  return c;
}

ProblemSpec ex241(Index m, TauMode tau) {
  ProblemSpec s;
  s.family = Family::ex241;
  s.size = m;
  s.tau = tau;
  return s;
}

ProblemSpec ex242(Index m) {
  ProblemSpec s;
  s.family = Family::ex242;
  s.size = m;
  s.sigma1 = 100.0;
  s.sigma2 = 100.0;
  return s;
}

ProblemSpec ex31(Index n, double t) {
  ProblemSpec s;
  s.family = Family::ex31;
  s.size = n;
  s.t = t;
  return s;
}

ProblemSpec ex421(Index n) {
  ProblemSpec s;
  s.family = Family::ex421;
  s.size = n;
  return s;
}

Preset table1() {
  Preset p{"table1", "ex241 comparison, tau = h and GADI at tau = 500h", {}, false};
  for (Index m : kTableSizes) {
    RunConfig c = base_config();
    c.problems = {ex241(m, TauMode::h)};
    c.algorithms = kComparison;
    p.stages.push_back(c);
    RunConfig g = base_config();
    g.problems = {ex241(m, TauMode::h500)};
    g.algorithms = {Algorithm::gadi};
    p.stages.push_back(g);
  }
  return p;
}

Preset table2() {
  Preset p{"table2", "ex242 comparison, sigma1 = sigma2 = 100", {}, false};
  RunConfig c = base_config();
  for (Index m : kTableSizes) c.problems.push_back(ex242(m));
  c.algorithms = kComparison;
  p.stages.push_back(c);
  return p;
}

Preset table3() {
  Preset p{"table3", "ex31 n = 16, GADI at alpha~ over the omega list", {}, false};
  RunConfig c = base_config();
  c.problems = {ex31(16, 0.01), ex31(16, 0.1)};
  c.algorithms = {Algorithm::gadi};
  c.policy.kind = PolicyKind::sweep;
  c.policy.alpha_grid = {1.0};
  c.policy.alpha_relative = true;
  c.policy.omega_grid = {0.01, 0.1, 0.0, 0.5, 1.0, 1.5};
  p.stages.push_back(c);
  return p;
}

Preset table4() {
  Preset p{"table4", "ex31 HSS against GADI at alpha~", {}, false};
  RunConfig c = base_config();
  for (Index n : kTableSizes) {
    for (double t : {0.01, 0.1}) c.problems.push_back(ex31(n, t));
  }
  c.algorithms = {Algorithm::hss, Algorithm::gadi};
  p.stages.push_back(c);
  return p;
}

Preset table5() {
  Preset p{"table5", "ex421 Newton-GADI", {}, false};
  RunConfig c = base_config();
  for (Index n : {8, 16, 24, 32}) c.problems.push_back(ex421(n));
  c.algorithms = {Algorithm::newton_gadi};
  p.stages.push_back(c);
  return p;
}

Preset figure(const char* name, const char* description, RunConfig c) {
  return {name, description, {std::move(c)}, true};
}

const std::map<std::string, std::function<Preset()>>& registry() {
  static const std::map<std::string, std::function<Preset()>> presets{
      {"table1", table1},
      {"table2", table2},
      {"table3", table3},
      {"table4", table4},
      {"table5", table5},
      {"fig1",
       [] {
         RunConfig c = base_config();
         c.problems = {ex241(32, TauMode::h)};
         c.algorithms = kComparison;
         return figure("fig1", "ex241 m = 32 residual histories", c);
       }},
      {"fig2",
       [] {
         RunConfig c = base_config();
         c.problems = {ex242(32)};
         c.algorithms = kComparison;
         return figure("fig2", "ex242 m = 32 residual histories", c);
       }},
      {"fig3",
       [] {
         RunConfig c = base_config();
         c.problems = {ex31(32, 0.01)};
         c.algorithms = {Algorithm::hss, Algorithm::gadi};
         return figure("fig3", "ex31 n = 32 t = 0.01 residual histories", c);
       }},
      {"fig4",
       [] {
         RunConfig c = base_config();
         c.problems = {ex31(32, 0.1)};
         c.algorithms = {Algorithm::hss, Algorithm::gadi};
         return figure("fig4", "ex31 n = 32 t = 0.1 residual histories", c);
       }},
      {"fig5",
       [] {
         RunConfig c = base_config();
         for (Index n : kTableSizes) c.problems.push_back(ex31(n, 0.01));
         c.algorithms = {Algorithm::hss, Algorithm::gadi};
         return figure("fig5", "ex31 t = 0.01 time against n", c);
       }},
      {"fig6",
       [] {
         RunConfig c = base_config();
         for (Index n : kTableSizes) c.problems.push_back(ex31(n, 0.1));
         c.algorithms = {Algorithm::hss, Algorithm::gadi};
         return figure("fig6", "ex31 t = 0.1 time against n", c);
       }},
      {"fig7",
       [] {
         RunConfig c = base_config();
         for (Index n : {8, 16, 24}) c.problems.push_back(ex421(n));
         c.algorithms = {Algorithm::newton_gadi};
         return figure("fig7", "ex421 Newton residual histories", c);
       }},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"table1", "table2", "table3", "table4", "table5", "fig1",
          "fig2",   "fig3",   "fig4",   "fig5",   "fig6",   "fig7"};
}

Preset make_preset(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw ConfigError("unknown preset '" + name + "'");
  return it->second();
}

PresetOutput run_preset(const Preset& preset) {
  PresetOutput out;
  for (const auto& stage : preset.stages) stage.validate();
  for (const auto& stage : preset.stages) {
    auto rows = run_grid(stage, preset.emits_series ? &out.series : nullptr);
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  }
  return out;
}

}  // namespace gadi
