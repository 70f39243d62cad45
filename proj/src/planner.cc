/**
 * planner.cc
 */

#include "pbd/planner.h"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "pbd/error.h"

namespace pbd {

namespace {

// Packed closed-world state over an interned atom universe.
using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& bits) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : bits) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

bool Test(const Bits& bits, std::size_t i) {
  return (bits[i / 64] >> (i % 64)) & 1u;
}
void Set(Bits& bits, std::size_t i) { bits[i / 64] |= std::uint64_t{1} << (i % 64); }
void Clear(Bits& bits, std::size_t i) {
  bits[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

struct CompiledAction {
  std::size_t index;  // into the sorted ground operator list
  std::vector<std::size_t> pre_pos, pre_neg, add, del;
};

// Search-ready encoding of a problem. Atoms are interned in canonical order,
// so two states are equal iff their sorted atom texts are equal.
class CompiledProblem {
 public:
  explicit CompiledProblem(const PlanningProblem& problem)
      : ground_(GroundOperators(problem.domain, problem.objects)) {
    LiteralSet universe(problem.init.begin(), problem.init.end());
    for (const Literal& g : problem.goal) universe.insert(g.Atom());
    for (const GroundOperator& op : ground_) {
      for (const Literal& l : op.preconditions) universe.insert(l.Atom());
      for (const Literal& l : op.effects) universe.insert(l.Atom());
    }
    atoms_.assign(universe.begin(), universe.end());
    for (std::size_t i = 0; i < atoms_.size(); ++i) index_[atoms_[i]] = i;
    words_ = (atoms_.size() + 63) / 64;

    init_ = Encode(problem.init);
    for (const Literal& g : problem.goal) {
      (g.negated ? goal_neg_ : goal_pos_).push_back(index_.at(g.Atom()));
    }

    // Drop actions whose preconditions can never hold: a positive atom absent
    // initially that nothing adds, or a negative one present that nothing
    // deletes.
    std::unordered_set<std::size_t> addable;
    std::unordered_set<std::size_t> deletable;
    for (const GroundOperator& op : ground_) {
      for (const Literal& e : op.effects) {
        (e.negated ? deletable : addable).insert(index_.at(e.Atom()));
      }
    }
    for (std::size_t k = 0; k < ground_.size(); ++k) {
      CompiledAction a{k, {}, {}, {}, {}};
      bool possible = true;
      for (const Literal& l : ground_[k].preconditions) {
        const std::size_t i = index_.at(l.Atom());
        if (l.negated) {
          a.pre_neg.push_back(i);
          if (Test(init_, i) && !deletable.count(i)) possible = false;
        } else {
          a.pre_pos.push_back(i);
          if (!Test(init_, i) && !addable.count(i)) possible = false;
        }
      }
      for (const Literal& e : ground_[k].effects) {
        (e.negated ? a.del : a.add).push_back(index_.at(e.Atom()));
      }
      if (possible) actions_.push_back(std::move(a));
    }
    for (const CompiledAction& a : actions_) {
      for (std::size_t i : a.add) addable_.insert(i);
      for (std::size_t i : a.del) deletable_.insert(i);
    }
  }

  Bits Encode(const State& state) const {
    Bits bits(words_, 0);
    for (const Literal& a : state) {
      auto it = index_.find(a);
      if (it != index_.end()) Set(bits, it->second);
    }
    return bits;
  }

  bool Applicable(const Bits& s, const CompiledAction& a) const {
    for (std::size_t i : a.pre_pos) {
      if (!Test(s, i)) return false;
    }
    for (std::size_t i : a.pre_neg) {
      if (Test(s, i)) return false;
    }
    return true;
  }

  Bits Apply(const Bits& s, const CompiledAction& a) const {
    Bits next = s;
    for (std::size_t i : a.del) Clear(next, i);
    for (std::size_t i : a.add) Set(next, i);
    return next;
  }

  std::size_t GoalCount(const Bits& s) const {
    std::size_t n = 0;
    for (std::size_t i : goal_pos_) n += Test(s, i) ? 0 : 1;
    for (std::size_t i : goal_neg_) n += Test(s, i) ? 1 : 0;
    return n;
  }

  const Bits& init() const { return init_; }
  const std::vector<CompiledAction>& actions() const { return actions_; }
  const GroundAction& action(const CompiledAction& a) const {
    return ground_[a.index].action;
  }

  void Analyze(const PlanningProblem& problem, SearchResult& result) const {
    for (const Literal& g : problem.goal) {
      if (Holds(problem.init, g)) continue;
      result.unsatisfied_goals.push_back(g);
      const std::size_t i = index_.at(g.Atom());
      if (g.negated ? !deletable_.count(i) : !addable_.count(i)) {
        result.unachievable_goals.push_back(g);
      }
    }
  }

 private:
  std::vector<GroundOperator> ground_;
  std::vector<Literal> atoms_;
  std::map<Literal, std::size_t> index_;
  std::size_t words_ = 0;
  Bits init_;
  std::vector<std::size_t> goal_pos_;
  std::vector<std::size_t> goal_neg_;
  std::vector<CompiledAction> actions_;
  std::unordered_set<std::size_t> addable_;
  std::unordered_set<std::size_t> deletable_;
};

struct Node {
  Bits state;
  std::size_t parent;  // npos for the root
  std::size_t action;  // index into CompiledProblem::actions()
  std::size_t depth;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

Plan Extract(const CompiledProblem& cp, const std::vector<Node>& nodes,
             std::size_t leaf) {
  Plan plan;
  for (std::size_t n = leaf; nodes[n].parent != kNone; n = nodes[n].parent) {
    plan.steps.push_back(cp.action(cp.actions()[nodes[n].action]));
  }
  std::reverse(plan.steps.begin(), plan.steps.end());
  return plan;
}

SearchResult BreadthFirst(const CompiledProblem& cp,
                          const SearchConfig& config) {
  SearchResult result;
  std::vector<Node> nodes{{cp.init(), kNone, kNone, 0}};
  if (cp.GoalCount(cp.init()) == 0) {
    result.status = SearchResult::Status::kFound;
    return result;
  }
  std::unordered_set<Bits, BitsHash> seen{cp.init()};
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    if (result.expansions >= config.max_expansions) {
      result.status = SearchResult::Status::kBudgetExceeded;
      return result;
    }
    const std::size_t current = frontier.front();
    frontier.pop_front();
    ++result.expansions;
    const auto& actions = cp.actions();
    for (std::size_t k = 0; k < actions.size(); ++k) {
      if (!cp.Applicable(nodes[current].state, actions[k])) continue;
      Bits next = cp.Apply(nodes[current].state, actions[k]);
      if (!seen.insert(next).second) continue;
      nodes.push_back({std::move(next), current, k, nodes[current].depth + 1});
      if (cp.GoalCount(nodes.back().state) == 0) {
        result.status = SearchResult::Status::kFound;
        result.plan = Extract(cp, nodes, nodes.size() - 1);
        return result;
      }
      frontier.push_back(nodes.size() - 1);
    }
  }
  result.status = SearchResult::Status::kNoPlan;
  return result;
}

SearchResult AStarGoalCount(const CompiledProblem& cp,
                            const SearchConfig& config) {
  SearchResult result;
  // (f, h, insertion order, node)
  using Entry =
      std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::vector<Node> nodes{{cp.init(), kNone, kNone, 0}};
  std::unordered_map<Bits, std::size_t, BitsHash> best_g{{cp.init(), 0}};
  std::size_t counter = 0;
  const std::size_t h0 = cp.GoalCount(cp.init());
  open.emplace(h0, h0, counter++, 0);

  while (!open.empty()) {
    const auto [f, h, order, current] = open.top();
    open.pop();
    const Node& node = nodes[current];
    if (best_g.at(node.state) < node.depth) continue;  // stale entry
    if (h == 0) {
      result.status = SearchResult::Status::kFound;
      result.plan = Extract(cp, nodes, current);
      return result;
    }
    if (result.expansions >= config.max_expansions) {
      result.status = SearchResult::Status::kBudgetExceeded;
      return result;
    }
    ++result.expansions;
    const auto& actions = cp.actions();
    for (std::size_t k = 0; k < actions.size(); ++k) {
      if (!cp.Applicable(nodes[current].state, actions[k])) continue;
      Bits next = cp.Apply(nodes[current].state, actions[k]);
      const std::size_t g = nodes[current].depth + 1;
      auto it = best_g.find(next);
      if (it != best_g.end() && it->second <= g) continue;
      best_g[next] = g;
      const std::size_t hn = cp.GoalCount(next);
      nodes.push_back({std::move(next), current, k, g});
      open.emplace(g + hn, hn, counter++, nodes.size() - 1);
    }
  }
  result.status = SearchResult::Status::kNoPlan;
  return result;
}

}  // namespace

PlanningProblem MakePlanningProblem(const DomainDef& domain,
                                    const ProblemDef& problem) {
  Validate(problem, &domain);
  return PlanningProblem{domain, problem.objects, problem.init, problem.goal};
}

std::string ToString(SearchStrategy strategy) {
  return strategy == SearchStrategy::kBfsOptimal ? "bfs_optimal"
                                                 : "astar_goalcount";
}

std::string ToString(SearchResult::Status status) {
  switch (status) {
    case SearchResult::Status::kFound:
      return "ok";
    case SearchResult::Status::kNoPlan:
      return "no_plan";
    case SearchResult::Status::kBudgetExceeded:
      return "budget_exceeded";
  }
  return "";
}

std::vector<GroundOperator> GroundOperators(
    const DomainDef& domain, const std::vector<Symbol>& objects) {
  std::vector<GroundOperator> out;
  for (const LiftedOperator& op : domain.operators) {
    std::vector<std::vector<std::string>> candidates;
    for (const Symbol& p : op.parameters) {
      std::vector<std::string> of_type;
      for (const Symbol& o : objects) {
        if (o.type == p.type) of_type.push_back(o.name);
      }
      candidates.push_back(std::move(of_type));
    }
    if (std::any_of(candidates.begin(), candidates.end(),
                    [](const auto& c) { return c.empty(); }) &&
        !op.parameters.empty()) {
      continue;
    }
    std::vector<std::size_t> choice(op.parameters.size(), 0);
    while (true) {
      GroundAction action{op.name, {}};
      for (std::size_t i = 0; i < choice.size(); ++i) {
        action.args.push_back(candidates[i][choice[i]]);
      }
      const Binding binding = BindParameters(op, action);
      GroundOperator g{action, Substitute(op.preconditions, binding),
                       Substitute(op.effects, binding)};
      const bool contradictory =
          std::any_of(g.preconditions.begin(), g.preconditions.end(),
                      [&](const Literal& l) {
                        return !l.negated && g.preconditions.count(l.Negation());
                      });
      if (!contradictory) out.push_back(std::move(g));

      // Odometer increment over the candidate lists.
      bool done = true;
      for (std::size_t i = choice.size(); i-- > 0;) {
        if (++choice[i] < candidates[i].size()) {
          done = false;
          break;
        }
        choice[i] = 0;
      }
      if (done) break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GroundOperator& a, const GroundOperator& b) {
              return ToString(a.action) < ToString(b.action);
            });
  return out;
}

std::size_t GoalCountHeuristic(const State& state, const LiteralSet& goal) {
  return Unsatisfied(state, goal).size();
}

SearchResult Search(const PlanningProblem& problem,
                    const SearchConfig& config) {
  if (config.max_expansions < 1) {
    throw Error("InvalidConfig", "max_expansions must be at least 1");
  }
  for (const Literal& g : problem.goal) {
    if (!g.IsGround()) {
      throw Error("NonGroundLiteral", "goal literal " + ToString(g) +
                                          " is not ground");
    }
  }
  const CompiledProblem cp(problem);
  SearchResult result = config.strategy == SearchStrategy::kBfsOptimal
                            ? BreadthFirst(cp, config)
                            : AStarGoalCount(cp, config);
  if (!result.found()) cp.Analyze(problem, result);
  return result;
}

Plan FindPlan(const PlanningProblem& problem, const SearchConfig& config) {
  SearchResult result = Search(problem, config);
  switch (result.status) {
    case SearchResult::Status::kFound:
      return std::move(result.plan);
    case SearchResult::Status::kBudgetExceeded:
      throw Error("BudgetExceeded",
                  "search exceeded " + std::to_string(config.max_expansions) +
                      " expansions");
    case SearchResult::Status::kNoPlan:
      break;
  }
  std::string message = "no plan found";
  if (!result.unachievable_goals.empty()) {
    message += "; no action achieves";
    for (const Literal& g : result.unachievable_goals) {
      message += " " + ToString(g);
    }
  }
  throw Error("NoPlanFound", message);
}

ValidationReport ValidatePlan(const PlanningProblem& problem,
                              const Plan& plan) {
  ValidationReport report;
  State state = problem.init;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const GroundAction& step = plan.steps[i];
    const LiftedOperator* op = problem.domain.FindOperator(step.operator_name);
    try {
      if (op == nullptr) {
        throw Error("UnknownOperator", "unknown operator " + step.operator_name);
      }
      state = ApplyModelAction(state, step, *op);
    } catch (const PreconditionFailure& failure) {
      report.executable = false;
      report.failing_step = i;
      for (const std::string& t : failure.unsatisfied()) {
        report.unsatisfied.push_back(ParseLiteral(t));
      }
      report.error = failure.what();
      break;
    } catch (const Error& e) {
      report.executable = false;
      report.failing_step = i;
      report.error = e.what();
      break;
    }
  }
  report.final_state = state;
  report.goal_satisfied =
      report.executable && GoalCountHeuristic(state, problem.goal) == 0;
  return report;
}

}  // namespace pbd
