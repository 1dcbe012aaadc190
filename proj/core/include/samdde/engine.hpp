#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "samdde/problem.hpp"
#include "samdde/stencil.hpp"
#include "samdde/tableau.hpp"

namespace samdde {

/// Macro/micro integrators plus the stencil schedule. h = T/m and
/// H = span/N are derived, never stored, so they are exact by construction.
struct SAMConfig {
  ButcherTableau macro_tableau;
  ButcherTableau micro_tableau;
  StencilSchedule schedule;
  int macro_steps = 1;             // N per segment span
  int micro_steps_per_period = 2;  // m, so h = T/m
};

/// Built-in method: the named tableau serves as both macro and micro
/// integrator. micro_steps_per_period = 0 selects the default m = 2N.
SAMConfig make_config(SamMethod method, int macro_steps,
                      int micro_steps_per_period = 0);

/// Integer coordinates of one micro stage value. Two lookups of the same
/// key return bit-identical vectors; segment ell requests only keys that
/// segment ell-1 populated (the schedules coincide by construction).
struct MicroKey {
  int macro_step = 0;   // n
  int macro_stage = 0;  // j (macro tableau stage)
  int leg = 0;          // 0 forward, 1 backward
  int micro_step = 0;   // nu within the leg
  int micro_stage = 0;  // j' (micro tableau stage)
};

/// Per-segment cache of micro-trajectory stage values plus the Case II
/// tail stages. This is the mechanism that serves delayed arguments to
/// the next segment.
class MicroStore {
 public:
  void put(const MicroKey& k, const Vec& v) { data_[pack(k)] = v; }
  const Vec* find(const MicroKey& k) const {
    auto it = data_.find(pack(k));
    return it == data_.end() ? nullptr : &it->second;
  }
  void put_tail(int step, int stage, const Vec& v) { tail_[{step, stage}] = v; }
  const Vec* find_tail(int step, int stage) const {
    auto it = tail_.find({step, stage});
    return it == tail_.end() ? nullptr : &it->second;
  }
  void clear() { data_.clear(); tail_.clear(); }
  std::size_t size() const { return data_.size() + tail_.size(); }

 private:
  static std::array<int, 5> pack(const MicroKey& k) {
    return {k.macro_step, k.macro_stage, k.leg, k.micro_step, k.micro_stage};
  }
  std::map<std::array<int, 5>, Vec> data_;
  std::map<std::pair<int, int>, Vec> tail_;
};

/// Supplies the delayed argument for one micro stage. `tail_step` < 0
/// means a macro-part stage addressed by `key`; otherwise a Case II tail
/// stage (tail_step, key.micro_stage). seg_time is the segment time of the
/// stage, used by the history-backed provider of segment 1.
using DelayedFn =
    std::function<Vec(const MicroKey& key, int tail_step, double seg_time)>;

/// Everything one segment's solve needs: the problem, the per-segment
/// offsets, the provider reading segment ell-1, and the sink recording
/// stage values for segment ell+1.
struct SegmentContext {
  const OscDDEProblem* problem = nullptr;
  int ell = 1;                 // 1-based segment index
  double slow_offset = 0.0;    // (ell-1)*tau
  double phase_offset = 0.0;   // Omega*(ell-1)*tau mod 2pi
  DelayedFn delayed;
  MicroStore* sink = nullptr;  // may be null (nothing recorded)
  unsigned long long* eval_count = nullptr;
};

/// Provider for segment 1: evaluates the history phi(t - tau) analytically.
DelayedFn history_provider(const OscDDEProblem& p);
/// Provider for segment ell >= 2: reads the previous segment's store and
/// fails hard (with the full key) on a miss.
DelayedFn store_provider(const MicroStore& prev, int ell);

/// Thrown when the state stops being finite; carries the step index.
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrates the oscillatory segment equation from micro time 0 to
/// direction*periods*T with step direction*T/m. The slow-time argument is
/// slow_offset + start_time + elapsed and the phase argument is
/// phase_offset + Omega*elapsed -- never Omega*(absolute time). Streams
/// every micro stage into ctx.sink and returns the endpoint; if
/// `period_endpoints` is given it receives the state after each whole
/// period (size = periods).
Vec micro_propagate(const SegmentContext& ctx, const Vec& y0, double start_time,
                    int macro_step, int macro_stage, int direction, int periods,
                    const SAMConfig& cfg,
                    std::vector<Vec>* period_endpoints = nullptr);

/// Averaged right-hand side F at (stage_time, w) via the given stencil:
/// one micro propagation per direction covering the outermost offsets,
/// combined with stencil_apply. Offset 0 contributes w itself.
Vec eval_averaged_rhs(const SegmentContext& ctx, int macro_step, int macro_stage,
                      double stage_time, const Vec& w, const Stencil& st,
                      const SAMConfig& cfg);

/// Stencil scheduled for a macro stage at `stage_time`: at_start if the
/// interior window would cross below 0, at_end if it would cross above
/// span, interior otherwise. Returns null if at_end is needed but absent.
const Stencil* pick_stencil(const StencilSchedule& sch, double stage_time,
                            double period, double span);

/// Advances the averaged equation for one segment over [0, span] with the
/// macro tableau; every stage's F is recovered through eval_averaged_rhs.
/// Returns the N+1 macro grid values.
std::vector<Vec> macro_integrate_segment(const SegmentContext& ctx, const Vec& X0,
                                         double span, const SAMConfig& cfg);

struct ValidityIssue {
  int macro_step = 0;
  int macro_stage = 0;
  int offset = 0;        // the violating stencil offset (in periods)
  double stage_time = 0.0;
  std::string message;
};

class ValidityError : public std::runtime_error {
 public:
  ValidityError(const ValidityIssue& issue)
      : std::runtime_error(issue.message), issue_(issue) {}
  const ValidityIssue& issue() const { return issue_; }

 private:
  ValidityIssue issue_;
};

/// Checks that H >= T and that every scheduled stencil window
/// [theta + k_min T, theta + k_max T] stays inside [0, span]. Returns the
/// first violation, or nothing when the configuration is usable.
std::optional<ValidityIssue> validity_check(const OscDDEProblem& p,
                                            const SAMConfig& cfg,
                                            const CaseInfo& info);

/// Macro-grid approximations per segment plus the chained endpoints.
struct StroboscopicSolution {
  CaseInfo case_info;
  double span = 0.0;               // tau (Case I) or M*T (Case II)
  int macro_steps = 0;             // N
  int micro_steps_per_period = 0;  // m
  std::vector<std::vector<Vec>> grid;  // [ell-1][n], n = 0..N
  std::vector<Vec> tail_endpoint;      // [ell-1], Case II only
  unsigned long long rhs_evaluations = 0;

  double macro_step_size() const { return span / macro_steps; }
  /// Absolute time of macro node (ell, n); ell is 1-based.
  double node_time(int ell, int n, double delay) const {
    return (ell - 1) * delay + n * macro_step_size();
  }
  const Vec& final_value() const {
    return tail_endpoint.empty() ? grid.back().back() : tail_endpoint.back();
  }
};

/// Case I driver: spans tau per segment and chains X^(l+1)_0 = X^(l)_N.
StroboscopicSolution solve_case1(const OscDDEProblem& p, const SAMConfig& cfg);

/// Case II driver: spans M*T per segment, then integrates the oscillatory
/// tail [M*T, tau] with the micro integrator (floor(r/h) steps of h plus
/// one remainder step) and chains the tail endpoint.
StroboscopicSolution solve_case2(const OscDDEProblem& p, const SAMConfig& cfg);

/// Dispatches on classify_case.
StroboscopicSolution solve(const OscDDEProblem& p, const SAMConfig& cfg);

}  // namespace samdde
