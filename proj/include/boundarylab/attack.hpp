#ifndef BOUNDARYLAB_ATTACK_HPP
#define BOUNDARYLAB_ATTACK_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "boundarylab/core.hpp"

namespace boundarylab {

// Query-budget shape. The window pair models rate throttling in a timeless
// setting: queries advance a tick counter, and at most window_limit of every
// window_size consecutive ticks may be spent. Since a blocked query does not
// advance the counter, the first saturated window stops the attack for good.
struct ThrottlePolicy {
    std::int64_t max_queries = std::numeric_limits<std::int64_t>::max();
    std::int64_t window_size = 0;   // 0 disables the window shape
    std::int64_t window_limit = 0;
};

// Raised by the oracle when a query would exceed the policy. Attack loops
// catch it and halt gracefully; anything else propagates.
struct BudgetExhausted : std::runtime_error {
    BudgetExhausted() : std::runtime_error("query budget exhausted") {}
};

// Wraps a classifier so that every evaluation is counted and the policy is
// enforced on the oracle side; the attacker cannot opt out.
class CountingOracle : public DecisionFunction {
public:
    CountingOracle(const DecisionFunction& f, ThrottlePolicy policy);

    int dim() const override { return f_->dim(); }
    int label_count() const override { return f_->label_count(); }
    Label evaluate(const Point& x) const override;

    std::int64_t queries() const { return count_; }
    const DecisionFunction& inner() const { return *f_; }
    const ThrottlePolicy& policy() const { return policy_; }

private:
    const DecisionFunction* f_;
    ThrottlePolicy policy_;
    mutable std::int64_t count_ = 0;
};

struct AttackTrace {
    // (query index, best verified adversarial distance) after each counted
    // query from the second one on; non-increasing in the second component.
    std::vector<std::pair<std::int64_t, double>> query_log;
    double final_distance = 0.0;
    bool success = false;  // some bisection reached bracket width <= tolerance
    std::int64_t queries_used = 0;
    std::uint64_t seed = 0;
    Point best_point;  // best adversarial point when one was verified
};

// Label-only boundary attack. Phase 1 bisects [x_orig, x_seed] until the
// bracket is narrower than tolerance. Phase 2 (dimension >= 2) repeatedly
// steps the best point in a random direction orthogonal to the line back to
// x_orig, re-verifies the label and re-bisects, keeping the closest verified
// adversarial point. Halts on budget exhaustion or after max_rounds phase-2
// rounds. With a fixed seed the query sequence is deterministic, so a run
// at a smaller budget is a prefix of a run at a larger one.
AttackTrace boundary_attack(CountingOracle& oracle, const Point& x_orig,
                            const Point& x_seed, double tolerance,
                            std::uint64_t seed,
                            std::int64_t max_rounds = 1000000);

struct BudgetSweepRow {
    std::int64_t budget = 0;
    double mean_final_distance = 0.0;
    double success_rate = 0.0;
    int seeds = 0;
};

// One attack per (budget, seed) cell, each with a private counting oracle;
// the same seeds are reused across budgets so traces are prefix-nested and
// the mean final distance cannot increase with the budget.
std::vector<BudgetSweepRow> budget_sweep(const DecisionFunction& f,
                                         const Point& x_orig, const Point& x_seed,
                                         double tolerance,
                                         const std::vector<std::int64_t>& budgets,
                                         const std::vector<std::uint64_t>& seeds,
                                         std::int64_t max_rounds = 1000000,
                                         int threads = 1);

// CSV with header query_index,best_distance.
void write_trace_csv(const AttackTrace& trace, const std::string& path);

// CSV with header budget,mean_final_distance,success_rate,seeds.
void write_sweep_csv(const std::vector<BudgetSweepRow>& rows, const std::string& path);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_ATTACK_HPP
