#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqbit/dsl.hpp"
#include "pqbit/sigma.hpp"

namespace pqbit::dsl {

enum class EvalErrorKind { UnboundAtom, NonCrispLeaf, RandomInCrisp, RandomNotAllowed, ImpliesInQuantum };

struct eval_error : std::runtime_error {
    eval_error(EvalErrorKind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
    EvalErrorKind kind;
};

/// An atom binds to a crisp value, a truth pair, or evidence counts.
struct Binding {
    enum class Kind { Crisp, Pair, Counts } kind = Kind::Crisp;
    PBit crisp{};
    TruthPair pair{};
    Evidence counts{0, 0, 1};

    static Binding of(PBit v) { return {Kind::Crisp, v, {}, {0, 0, 1}}; }
    static Binding of(TruthPair w) { return {Kind::Pair, {}, w, {0, 0, 1}}; }
    static Binding of(Evidence e) { return {Kind::Counts, {}, {}, e}; }
};

using Environment = std::map<std::string, Binding>;

/// Environment file schema: {"a": {"pair": [0.7, 0.2]},
///                           "b": {"counts": [8, 1, 10]},
///                           "c": "B"}
Environment environment_from_json(const nlohmann::json& j);

PBit eval_crisp(const Expr& e, const Environment& env, ImplVariant variant = ImplVariant::Printed);

TruthPair eval_fuzzy(const Expr& e, const Environment& env, const TNormFamily& fam,
                     ImplVariant variant = ImplVariant::Printed);

/// Maps every leaf through sigma and folds with the amplitude operations
/// selected by cfg.op_map.  Implication and random leaves are rejected.
Amplitude eval_quantum(const Expr& e, const Environment& env, const SigmaConfig& cfg);

struct CompareNode {
    std::string text;
    Amplitude direct{};  // eval_quantum on the subtree
    Amplitude mapped{};  // sigma applied to the fuzzy value of the subtree
    double abs_err = 0.0;
};

struct ComparisonReport {
    std::vector<CompareNode> nodes;  // post-order; the root is last
    double root_err = 0.0;
};

ComparisonReport compare(const Expr& e, const Environment& env, const SigmaConfig& cfg,
                         const TNormFamily& fam);

struct SampleResult {
    TruthPair value{};
    double stderr_plus = 0.0;
    double stderr_minus = 0.0;
    std::size_t trials = 0;
};

/// Resolves each random(rho) leaf by an independent Bernoulli draw per
/// trial, evaluates the expression crisply, and aggregates the outcomes.
SampleResult sample_random(const Expr& e, const Environment& env, std::size_t trials, std::uint64_t seed,
                           ImplVariant variant = ImplVariant::Printed);

}  // namespace pqbit::dsl
