#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gsplit/ast.hpp"

namespace gsplit {

/// Reference groundings and answer-set enumeration for small programs.

struct GroundRule {
    HeadKind kind = HeadKind::constraint;
    std::vector<int> head;  // atom ids
    std::vector<int> pos;
    std::vector<int> neg;
    int origin = -1;  // id of the non-ground rule
    std::optional<WeakAnnotation> weak;
};

struct GroundProgram {
    std::vector<Literal> atoms;  // atom id -> atom
    std::vector<GroundRule> rules;
    std::vector<int> facts;

    Rule to_rule(const GroundRule& rule) const;
};

struct CandidateSet {
    std::set<Literal> possibly_true;  // D
    std::set<Literal> surely_true;    // D_T
};

struct GroundResult {
    GroundProgram program;
    CandidateSet candidates;
};

inline constexpr std::uint64_t kDefaultGroundCap = 10'000'000;

/// Every rule over every assignment of its variables to program constants;
/// instances with a false comparison are dropped. Throws CapExceeded when
/// Σ_r |dom|^|var(r)| exceeds `cap`.
GroundProgram naive_ground(const Program& program, std::uint64_t cap = kDefaultGroundCap);

/// SCC-wise instantiation driven by the candidate set. Instances blocked by
/// a surely true negative atom, or whose normal head is already surely
/// true, are not emitted; surely true atoms become facts. `cap` bounds the
/// join work spent on any single rule.
GroundResult bottom_up_ground(const Program& program, std::uint64_t cap = kDefaultGroundCap);

std::size_t count_ground_rules(const GroundProgram& ground);
/// Emitted instances of the non-ground rule with the given id.
std::size_t count_ground_rules(const GroundProgram& ground, int origin);

/// Ground program text, one statement per line, facts last.
std::string print_ground(const GroundProgram& ground);

using AnswerSet = std::set<std::string>;

/// Answer sets via the Gelfond-Lifschitz reduct. Choice instances {h} :- B
/// behave as the pair h :- B, not h'. h' :- not h. with h' projected away.
/// Weak constraints do not restrict answer sets. Throws CapExceeded when
/// more than `max_atoms` atoms have to be guessed.
std::set<AnswerSet> answer_sets_bruteforce(const GroundProgram& ground, std::size_t max_atoms = 20);

/// Drops atoms whose predicate starts with `prefix`.
std::set<AnswerSet> project_out(const std::set<AnswerSet>& sets, std::string_view prefix);

}  // namespace gsplit
