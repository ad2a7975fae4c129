#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sticky/adaptation.hpp"
#include "sticky/proposal.hpp"
#include "sticky/rng.hpp"
#include "sticky/support_set.hpp"
#include "sticky/targets.hpp"

namespace sticky {

// Which transition kernel drives the chain.
//   asm        adaptive sticky Metropolis (single try)
//   asmtm:<M>  adaptive sticky multiple-try Metropolis with M tries
//   arms       rejection-sampling prefilter + MH correction, adapting only
//              on prefilter rejections (the classic baseline)
//   imh        independence MH with the proposal frozen at t = 0
struct KernelSpec {
  enum class Kind { Asm, Asmtm, Arms, Imh };
  Kind kind = Kind::Asm;
  int M = 1;

  static KernelSpec parse(const std::string& s);
  std::string name() const;
};

struct ChainOptions {
  bool freeze_adaptation = false;  // never update the support set
  std::size_t max_support = 0;     // 0 = unlimited; else update tests become no-ops
  long rs_cap = 10000;             // consecutive prefilter rejections before RsLoopStall
};

struct ChainState {
  double x;
  double logpi_x;  // cached target log-density at x
  SupportSet set;  // never contains x
  Proposal prop;
  long iter = 0;
  long eval_count = 0;  // target evaluations
  long cand_count = 0;  // candidates drawn (the effort indicator EI)
  bool warned_cap = false;
};

// What one transition did; enough to re-check the acceptance formula and the
// support-set update from outside.
struct StepEvent {
  bool accepted = false;
  double candidate = 0;    // the (selected) candidate
  double z = 0;            // tested non-retained point, if any
  bool z_tested = false;
  bool z_included = false;
  double accept_prob = 0;
  int rs_rejects = 0;      // prefilter rejections consumed by this step (arms)
};

// Generalized multiple-try acceptance ratio min{1, sum w(y_i) / sum w(x*_i)}
// from the log weights, computed via shifted exponentials.
double mtm_acceptance(const std::vector<double>& logw_num, const std::vector<double>& logw_den);

ChainState init_chain(const TargetModel& target, Construction kind,
                      const std::vector<double>& s0, double x0);

// One transition of the single- or multiple-try sticky kernel (M = 1 is the
// plain sticky Metropolis; the draw sequence is identical by construction).
StepEvent asm_step(ChainState& st, const TargetModel& target, const UpdateRule& rule, int M,
                   RngStream& rng, const ChainOptions& opts = {});

StepEvent arms_step(ChainState& st, const TargetModel& target, RngStream& rng,
                    const ChainOptions& opts = {});

StepEvent imh_step(ChainState& st, const TargetModel& target, RngStream& rng);

// Per-iteration record of a full chain.  Nothing is discarded: estimators
// run over the chain from iteration one.
struct Trace {
  std::vector<double> x;
  std::vector<unsigned char> accepted;
  std::vector<int> nsp;    // support points (+ line intersections under c1)
  std::vector<double> c;   // proposal normalizing constant after the step
  long evals = 0, cands = 0;
  int m_T = 0;             // support-set size at the last iteration
  std::uint64_t seed = 0;
};

Trace run_chain(const TargetModel& target, const KernelSpec& kernel, Construction kind,
                const UpdateRule& rule, const std::vector<double>& s0, double x0, long T,
                RngStream& rng, const ChainOptions& opts = {});

}  // namespace sticky
