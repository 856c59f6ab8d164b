#pragma once

#include <string>
#include <vector>

#include "wsl/rational.hpp"

namespace wsl {

// Relation of a single named condition. The paper mixes strict and non-strict
// inequalities and a few exact scaling identities; each condition records its
// strictness as stated.
enum class Relation { LessThan, LessEqual, Equal };

enum class Verdict {
  Satisfied,        // holds, strictly for LessEqual
  HeldWithEquality, // non-strict inequality holds with equality
  Violated,
};

struct ConditionReport {
  std::string name;
  Relation relation;
  Rat lhs;
  Rat rhs;
  Verdict verdict;

  bool ok() const { return verdict != Verdict::Violated; }
};

inline ConditionReport check(std::string name, const Rat& lhs, Relation rel,
                             const Rat& rhs) {
  Verdict v;
  switch (rel) {
    case Relation::LessThan:
      v = (lhs < rhs) ? Verdict::Satisfied : Verdict::Violated;
      break;
    case Relation::LessEqual:
      v = (lhs < rhs)    ? Verdict::Satisfied
          : (lhs == rhs) ? Verdict::HeldWithEquality
                         : Verdict::Violated;
      break;
    case Relation::Equal:
      v = (lhs == rhs) ? Verdict::Satisfied : Verdict::Violated;
      break;
  }
  return ConditionReport{std::move(name), rel, lhs, rhs, v};
}

enum class MemberStatus { Interior, Boundary, Outside };

// Tri-state membership verdict. Exact scaling identities (Relation::Equal)
// count as satisfied or violated only; boundary detection applies to
// non-strict inequalities holding with equality.
struct Membership {
  MemberStatus status = MemberStatus::Outside;
  std::vector<std::string> violated;
  std::vector<ConditionReport> conditions;

  bool is_member() const { return status != MemberStatus::Outside; }
};

inline Membership classify(std::vector<ConditionReport> reports) {
  Membership m;
  bool equality = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Violated) m.violated.push_back(r.name);
    if (r.verdict == Verdict::HeldWithEquality) equality = true;
  }
  if (!m.violated.empty())
    m.status = MemberStatus::Outside;
  else
    m.status = equality ? MemberStatus::Boundary : MemberStatus::Interior;
  m.conditions = std::move(reports);
  return m;
}

inline const char* to_string(MemberStatus s) {
  switch (s) {
    case MemberStatus::Interior: return "interior";
    case MemberStatus::Boundary: return "boundary";
    case MemberStatus::Outside: return "outside";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::HeldWithEquality: return "equality";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessThan: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
  }
  return "?";
}

}  // namespace wsl
