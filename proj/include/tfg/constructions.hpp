#pragma once

#include "tfg/certificate.hpp"

namespace tfg {

/// An involution alpha with alpha(B) contained in A (requires
/// measure(B) < measure(A)); alpha fixes B ∩ A pointwise.
Certificate glasner_weiss_sub(const ClopenSet& B, const ClopenSet& A);

/// An involution alpha with alpha(B) = A (requires equal measures).
Certificate glasner_weiss_eq(const ClopenSet& B, const ClopenSet& A);

/// Factors g into elements supported on clopen sets of measure below delta.
Certificate small_generators(const GroupElement& g, const Rat& delta);

/// Writes a periodic g as a single commutator [g_1, psi].
Certificate periodic_commutator(const GroupElement& g);

/// Writes a periodic g as a product s*t of two involutions; s fixes the
/// cycle-base blocks pointwise.
Certificate periodic_two_involutions(const GroupElement& g);

/// An element h of period n supported inside A and moving the point x,
/// exhibited as l * r^{-1} with l = alpha * r * alpha^{-1}.
Certificate many_involutions(const ClopenSet& A, const PointPrefix& x, const Int& n);

/// One perfectness step: f = f_1 * [s,t] with f_1 minimal on a support of
/// measure below delta, all supports inside supp(f).
Certificate minimal_first_step(const GroupElement& f, const Rat& delta);

/// Iterates minimal_first_step with a halving delta schedule:
/// f = f_N * [s_N,t_N] * ... * [s_1,t_1].
Certificate commutator_expansion(const GroupElement& f, const Int& steps);

/// The commutator [h,g] as a product of four conjugates of the involution w,
/// transported into E by a Glasner-Weiss involution.
Certificate four_conjugates(const GroupElement& h, const GroupElement& g,
                            const GroupElement& w, const ClopenSet& E);

/// A clopen A with A, phi(A), ..., phi^{n-1}(A) disjoint and phi maps the
/// leftover B = complement of their union into A.
Certificate tower_lemma(SpecPtr spec, const Int& n);

/// An involution b with g = b*phi cycling 18 disjoint clopen blocks, identity
/// elsewhere, and g^18 minimal on the first block.
Certificate eighteen_cycle(SpecPtr spec);

/// phi = phi_A * s * t with phi_A the induced map on A and s, t involutions.
Certificate induced_times_involutions(const ClopenSet& A);

}  // namespace tfg
