#pragma once

#include <psisel/core/cut_oracle.hpp>
#include <psisel/core/labeling.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>
#include <psisel/flow/reductions.hpp>
#include <psisel/psi/enumerate.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace psisel {

/// F_lambda(S) = min over T subset of V\S of Gamma(T) - lambda |T|.
struct FLambda {
    Ratio value;      ///< always <= 0 (T = empty attains 0)
    NodeSet minimizer; ///< the largest minimizing T
};

namespace detail {

/// den * F_lambda(S) as an exact integer, with its largest minimizer.
inline flow::ShiftedMinimum scaled_f_lambda(const CutOracle& oracle, const NodeSet& s, const Ratio& lam) {
    if (oracle.kind() != OracleKind::symmetrized_generic)
        return flow::solve_strength(flow::strength_network(oracle, s, lam));

    const NodeSet free_nodes = s.complement();
    require_desk_scale(free_nodes.count(), "F_lambda evaluation");
    std::int64_t best = 0;
    std::size_t best_size = 0;
    NodeSet best_set(oracle.universe());
    for_each_subset(free_nodes, [&](const NodeSet& t, std::uint32_t) {
        std::int64_t size = static_cast<std::int64_t>(t.count());
        std::int64_t value = checked_add(checked_mul(lam.den(), oracle(t)), -checked_mul(lam.num(), size));
        // Minimizers of a submodular function form a lattice, so the largest
        // one is the unique minimizer of maximum cardinality.
        if (value < best || (value == best && t.count() > best_size)) {
            best = value;
            best_size = t.count();
            best_set = t;
        }
    });
    return {best, std::move(best_set)};
}

} // namespace detail

inline FLambda eval_f_lambda(const CutOracle& oracle, const NodeSet& s, const Ratio& lam) {
    if (s.universe() != oracle.universe())
        throw UniverseMismatch("eval_f_lambda: set and oracle universes differ");
    if (lam.is_infinite() || lam < Ratio(0))
        throw InvalidInput("eval_f_lambda: lambda must be finite and non-negative, got " + lam.to_string());
    auto result = detail::scaled_f_lambda(oracle, s, lam);
    return {Ratio(result.scaled_value, lam.den()), std::move(result.minimizer)};
}

/// Exact strength of a labeled set with the minimizing T as witness.
struct PsiCertificate {
    Ratio psi;             ///< +inf when S = V
    NodeSet witness;       ///< empty only when psi is infinite
    std::size_t iterations = 0;
};

/// Strength of S by the Dinkelbach-style iteration: start from T = V\S, set
/// lambda = Gamma(T)/|T| and replace T by the largest minimizer of
/// Gamma(T') - lambda |T'| until that minimum is zero. Each round strictly
/// lowers lambda.
inline PsiCertificate compute_psi(const CutOracle& oracle, const NodeSet& s) {
    if (s.universe() != oracle.universe())
        throw UniverseMismatch("compute_psi: set and oracle universes differ");
    PsiCertificate cert;
    NodeSet t = s.complement();
    if (t.empty()) {
        cert.psi = Ratio::infinity();
        cert.witness = std::move(t);
        return cert;
    }
    while (true) {
        Ratio lam(oracle(t), static_cast<std::int64_t>(t.count()));
        if (lam.is_zero()) {
            cert.psi = lam;
            cert.witness = std::move(t);
            return cert;
        }
        ++cert.iterations;
        auto next = detail::scaled_f_lambda(oracle, s, lam);
        if (next.scaled_value == 0) {
            cert.psi = lam;
            cert.witness = std::move(t);
            return cert;
        }
        t = std::move(next.minimizer);
    }
}

/// Strength by enumerating every nonempty T subset of V\S. Desk scale only.
inline Ratio brute_psi(const CutOracle& oracle, const NodeSet& s) {
    if (s.universe() != oracle.universe())
        throw UniverseMismatch("brute_psi: set and oracle universes differ");
    const NodeSet free_nodes = s.complement();
    require_desk_scale(free_nodes.count(), "brute_psi");
    Ratio best = Ratio::infinity();
    for_each_subset(free_nodes, [&](const NodeSet& t, std::uint32_t mask) {
        if (mask == 0)
            return;
        Ratio value(oracle(t), static_cast<std::int64_t>(t.count()));
        if (value < best)
            best = value;
    });
    return best;
}

/// The labeling pair that makes the error bound tight: y' is all ones and y
/// is zero exactly on the strength witness of L.
struct AdversarialPair {
    Labeling y;
    Labeling y_prime;
    PsiCertificate certificate;
};

inline AdversarialPair adversarial_labeling(const CutOracle& oracle, const NodeSet& labeled) {
    const std::size_t n = oracle.universe();
    if (oracle(NodeSet::full(n)) != 0)
        throw ConstructionUndefined("adversarial_labeling requires Gamma(V) = 0");
    PsiCertificate cert = compute_psi(oracle, labeled);
    if (cert.psi.is_infinite())
        throw ConstructionUndefined("adversarial_labeling: strength is infinite (L = V)");
    if (cert.psi.is_zero())
        throw ConstructionUndefined("adversarial_labeling: strength is zero");
    Labeling y_prime = Labeling::indicator(NodeSet::full(n));
    Labeling y = Labeling::indicator(cert.witness.complement());
    return {std::move(y), std::move(y_prime), std::move(cert)};
}

} // namespace psisel
