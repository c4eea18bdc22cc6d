#pragma once

#include <functional>
#include <span>
#include <vector>

#include "quantropy/classicality.hpp"
#include "quantropy/history_space.hpp"

namespace quantropy {

/// Normalized complex amplitude assignment a(x) over a history space,
/// together with the explicit logarithm branch b(x), exp(b(x)) = a(x).
/// Construction verifies Sum w_x a(x) = 1 (1e-10 absolute) and the
/// branch-consistency bound |exp(b)-a| <= 1e-12 (1+|a|).
class ComplexEnsemble {
public:
    ComplexEnsemble(HistorySpace space, std::vector<Complex> amplitudes,
                    std::vector<Complex> log_amplitudes);

    const HistorySpace& space() const { return space_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<const Complex> log_amplitudes() const { return log_amplitudes_; }
    std::size_t size() const { return space_.size(); }

    /// Q = -Sum_x w_x a(x) b(x), with 0 ln 0 read as 0.
    Complex quantropy() const;

    /// <A> = Sum_x w_x A(x) a(x). Complex in general: the mean is taken
    /// against a complex-valued measure, not a probability.
    Complex expected_action() const;

private:
    HistorySpace space_;
    std::vector<Complex> amplitudes_;
    std::vector<Complex> log_amplitudes_;
};

/// The quadruple of partition-function observables at a given classicality.
/// Invariants (verified by make_report): Q = lambda <A> + ln Z and
/// Phi = -(1/lambda) ln Z, both to 1e-10.
struct EnsembleReport {
    Complex log_Z;
    Complex expected_action;
    Complex quantropy;
    Complex free_action;
    Classicality lambda;
};

/// Assembles a report from its parts and verifies both identities.
EnsembleReport make_report(Complex log_Z, Complex expected_action,
                           Complex quantropy, Complex free_action,
                           const Classicality& lambda);

/// Principal-branch ln of Z = Sum_x w_x exp(-lambda A(x)), evaluated
/// with a min-action shift when Re(lambda) > 0 so the exponentials stay
/// in range. Throws ZeroPartitionFunction when |Z| underflows 1e-300 or
/// cancels below 1e-12 of the total mass Sum w |exp(-lambda A)|.
Complex log_partition_function(const HistorySpace& space,
                               const Classicality& lambda);

/// a(x) = exp(-lambda A(x)) / Z with b(x) = -lambda A(x) - Ln Z.
ComplexEnsemble feynman_weights(const HistorySpace& space,
                                const Classicality& lambda);

/// Full report (ln Z, <A>, Q, Phi) for the Feynman ensemble on `space`.
EnsembleReport report(const HistorySpace& space, const Classicality& lambda);

/// <A> = -d ln Z / dlambda by central difference of a caller-supplied
/// log-partition function, stepped along lambda/|lambda| with
/// h = step * max(1, |lambda|). O(h^2) truncation error. Throws
/// StepTooLarge when |Im(lnZ+ - lnZ-)| > pi (principal-branch jump).
Complex expected_action_from_log_z(
    const std::function<Complex(Complex)>& log_z, const Classicality& lambda,
    double step = 1e-6);

/// Same derivative applied to the partition function of `space`.
Complex expected_action_via_derivative(const HistorySpace& space,
                                       const Classicality& lambda,
                                       double step = 1e-6);

}  // namespace quantropy
