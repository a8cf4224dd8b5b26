#include "pqbit/eval.hpp"

#include <cmath>

#include "pqbit/rng.hpp"

namespace pqbit::dsl {

namespace {

[[noreturn]] void unbound(const std::string& name) {
    throw eval_error(EvalErrorKind::UnboundAtom, "unbound atom: " + name);
}

const Binding& lookup(const Environment& env, const std::string& name) {
    const auto it = env.find(name);
    if (it == env.end()) unbound(name);
    return it->second;
}

}  // namespace

Environment environment_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("environment: top level must be an object");
    Environment env;
    for (const auto& [name, value] : j.items()) {
        if (value.is_string()) {
            const std::string code = value.get<std::string>();
            if (code.size() != 1) throw std::invalid_argument("environment: bad crisp code for " + name);
            env[name] = Binding::of(pbit_from_code(code[0]));
        } else if (value.is_object() && value.contains("pair")) {
            const auto& arr = value["pair"];
            if (!arr.is_array() || arr.size() != 2) {
                throw std::invalid_argument("environment: pair for " + name + " must be [w+, w-]");
            }
            TruthPair w{arr[0].get<double>(), arr[1].get<double>()};
            validate(w);
            env[name] = Binding::of(w);
        } else if (value.is_object() && value.contains("counts")) {
            const auto& arr = value["counts"];
            if (!arr.is_array() || arr.size() != 3) {
                throw std::invalid_argument("environment: counts for " + name + " must be [n+, n-, total]");
            }
            Evidence e{arr[0].get<long>(), arr[1].get<long>(), arr[2].get<long>()};
            validate(e);
            env[name] = Binding::of(e);
        } else {
            throw std::invalid_argument("environment: unrecognized binding for " + name);
        }
    }
    return env;
}

PBit eval_crisp(const Expr& e, const Environment& env, ImplVariant variant) {
    switch (e.kind) {
        case ExprKind::CrispLit:
            return e.crisp;
        case ExprKind::Atom: {
            const Binding& b = lookup(env, e.atom);
            if (b.kind != Binding::Kind::Crisp) {
                throw eval_error(EvalErrorKind::NonCrispLeaf, "atom " + e.atom + " is not bound to a crisp value");
            }
            return b.crisp;
        }
        case ExprKind::PairLit:
        case ExprKind::CountLit:
            throw eval_error(EvalErrorKind::NonCrispLeaf, "crisp evaluation rejects non-crisp literals");
        case ExprKind::Random:
            throw eval_error(EvalErrorKind::RandomInCrisp, "crisp evaluation rejects random leaves");
        case ExprKind::Not:
            return cd_neg(eval_crisp(*e.lhs, env, variant));
        case ExprKind::And:
            return cd_meet(eval_crisp(*e.lhs, env, variant), eval_crisp(*e.rhs, env, variant));
        case ExprKind::Or:
            return cd_join(eval_crisp(*e.lhs, env, variant), eval_crisp(*e.rhs, env, variant));
        case ExprKind::Implies:
            return cd_impl(eval_crisp(*e.lhs, env, variant), eval_crisp(*e.rhs, env, variant), variant);
    }
    throw std::logic_error("eval_crisp: bad node kind");
}

TruthPair eval_fuzzy(const Expr& e, const Environment& env, const TNormFamily& fam, ImplVariant variant) {
    switch (e.kind) {
        case ExprKind::CrispLit:
            return embed(e.crisp);
        case ExprKind::PairLit:
            return e.pair;
        case ExprKind::CountLit:
            return normalize(e.counts);
        case ExprKind::Atom: {
            const Binding& b = lookup(env, e.atom);
            switch (b.kind) {
                case Binding::Kind::Crisp: return embed(b.crisp);
                case Binding::Kind::Pair: return b.pair;
                case Binding::Kind::Counts: return normalize(b.counts);
            }
            throw std::logic_error("eval_fuzzy: bad binding kind");
        }
        case ExprKind::Random:
            throw eval_error(EvalErrorKind::RandomNotAllowed,
                             "fuzzy evaluation rejects random leaves; use sample_random");
        case ExprKind::Not:
            return fuzzy_neg(eval_fuzzy(*e.lhs, env, fam, variant));
        case ExprKind::And:
            return fuzzy_meet(eval_fuzzy(*e.lhs, env, fam, variant), eval_fuzzy(*e.rhs, env, fam, variant), fam);
        case ExprKind::Or:
            return fuzzy_join(eval_fuzzy(*e.lhs, env, fam, variant), eval_fuzzy(*e.rhs, env, fam, variant), fam);
        case ExprKind::Implies:
            return fuzzy_impl(eval_fuzzy(*e.lhs, env, fam, variant), eval_fuzzy(*e.rhs, env, fam, variant), fam,
                              variant);
    }
    throw std::logic_error("eval_fuzzy: bad node kind");
}

Amplitude eval_quantum(const Expr& e, const Environment& env, const SigmaConfig& cfg) {
    switch (e.kind) {
        case ExprKind::CrispLit:
        case ExprKind::PairLit:
        case ExprKind::CountLit:
        case ExprKind::Atom:
            return sigma(cfg, eval_fuzzy(e, env, cfg.family));
        case ExprKind::Random:
            throw eval_error(EvalErrorKind::RandomNotAllowed,
                             "quantum evaluation rejects random leaves; use sample_random");
        case ExprKind::Not:
            return amp_neg(eval_quantum(*e.lhs, env, cfg));
        case ExprKind::And:
            return op_for_meet(cfg, eval_quantum(*e.lhs, env, cfg), eval_quantum(*e.rhs, env, cfg));
        case ExprKind::Or:
            return op_for_join(cfg, eval_quantum(*e.lhs, env, cfg), eval_quantum(*e.rhs, env, cfg));
        case ExprKind::Implies:
            throw eval_error(EvalErrorKind::ImpliesInQuantum,
                             "quantum evaluation has no amplitude operation for ->");
    }
    throw std::logic_error("eval_quantum: bad node kind");
}

namespace {

// Walks the tree once, collecting per-node direct and mapped amplitudes.
std::pair<Amplitude, TruthPair> compare_walk(const Expr& e, const Environment& env, const SigmaConfig& cfg,
                                             const TNormFamily& fam, ComparisonReport& report) {
    Amplitude direct{};
    TruthPair fuzzy{};
    switch (e.kind) {
        case ExprKind::CrispLit:
        case ExprKind::PairLit:
        case ExprKind::CountLit:
        case ExprKind::Atom:
            fuzzy = eval_fuzzy(e, env, fam);
            direct = sigma(cfg, fuzzy);
            break;
        case ExprKind::Random:
            throw eval_error(EvalErrorKind::RandomNotAllowed, "compare rejects random leaves");
        case ExprKind::Not: {
            const auto sub = compare_walk(*e.lhs, env, cfg, fam, report);
            direct = amp_neg(sub.first);
            fuzzy = fuzzy_neg(sub.second);
            break;
        }
        case ExprKind::And: {
            const auto l = compare_walk(*e.lhs, env, cfg, fam, report);
            const auto r = compare_walk(*e.rhs, env, cfg, fam, report);
            direct = op_for_meet(cfg, l.first, r.first);
            fuzzy = fuzzy_meet(l.second, r.second, fam);
            break;
        }
        case ExprKind::Or: {
            const auto l = compare_walk(*e.lhs, env, cfg, fam, report);
            const auto r = compare_walk(*e.rhs, env, cfg, fam, report);
            direct = op_for_join(cfg, l.first, r.first);
            fuzzy = fuzzy_join(l.second, r.second, fam);
            break;
        }
        case ExprKind::Implies:
            throw eval_error(EvalErrorKind::ImpliesInQuantum, "compare has no amplitude operation for ->");
    }
    const Amplitude mapped = sigma(cfg, fuzzy);
    const double err = amp_abs({direct.re - mapped.re, direct.im - mapped.im});
    report.nodes.push_back({print(e), direct, mapped, err});
    return {direct, fuzzy};
}

}  // namespace

ComparisonReport compare(const Expr& e, const Environment& env, const SigmaConfig& cfg,
                         const TNormFamily& fam) {
    ComparisonReport report;
    compare_walk(e, env, cfg, fam, report);
    report.root_err = report.nodes.back().abs_err;
    return report;
}

namespace {

PBit sample_walk(const Expr& e, const Environment& env, rng::Stream& stream, ImplVariant variant) {
    if (e.kind == ExprKind::Random) {
        return stream.uniform01() < e.rho ? kTrue : kFalse;
    }
    switch (e.kind) {
        case ExprKind::Not:
            return cd_neg(sample_walk(*e.lhs, env, stream, variant));
        case ExprKind::And:
            return cd_meet(sample_walk(*e.lhs, env, stream, variant), sample_walk(*e.rhs, env, stream, variant));
        case ExprKind::Or:
            return cd_join(sample_walk(*e.lhs, env, stream, variant), sample_walk(*e.rhs, env, stream, variant));
        case ExprKind::Implies:
            return cd_impl(sample_walk(*e.lhs, env, stream, variant), sample_walk(*e.rhs, env, stream, variant),
                           variant);
        default:
            return eval_crisp(e, env, variant);
    }
}

}  // namespace

SampleResult sample_random(const Expr& e, const Environment& env, std::size_t trials, std::uint64_t seed,
                           ImplVariant variant) {
    if (trials == 0) throw std::invalid_argument("sample_random: trials must be positive");
    rng::Stream stream(seed);
    long n_plus = 0;
    long n_minus = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const PBit v = sample_walk(e, env, stream, variant);
        n_plus += v.t ? 1 : 0;
        n_minus += v.f ? 1 : 0;
    }
    const TruthPair w = normalize({n_plus, n_minus, static_cast<long>(trials)});
    const double n = static_cast<double>(trials);
    return {w, std::sqrt(w.w_plus * (1.0 - w.w_plus) / n), std::sqrt(w.w_minus * (1.0 - w.w_minus) / n),
            trials};
}

}  // namespace pqbit::dsl
