// Oracle placement instances as planning problems.

#ifndef PBD_TESTS_INSTANCES_H_
#define PBD_TESTS_INSTANCES_H_

#include "oracle.h"
#include "pbd/planner.h"

namespace testing {

inline pbd::PlanningProblem InstanceProblem(const pbd::DomainDef& domain,
                                            const oracle::Instance& inst) {
  pbd::PlanningProblem p;
  p.domain = domain;
  for (const std::string& o : inst.objects) p.objects.push_back({o, "object"});
  for (const std::string& q : inst.positions) p.objects.push_back({q, "position"});
  p.objects.push_back({"red", "color"});
  p.objects.push_back({"blue", "color"});
  for (const std::string& a : oracle::PlacementAtoms(inst, inst.placement)) {
    p.init.Insert(pbd::ParseLiteral(a));
  }
  for (const oracle::Condition& c : inst.goal) {
    p.goal.insert(pbd::ParseLiteral(oracle::ConditionText(inst, c)));
  }
  return p;
}

}  // namespace testing

#endif  // PBD_TESTS_INSTANCES_H_
