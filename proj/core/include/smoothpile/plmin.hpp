#pragma once

#include <vector>

#include "smoothpile/field.hpp"

namespace smoothpile {

/// Integer affine form p*x + q*y + c.
struct AffineForm {
    Value p = 0;
    Value q = 0;
    Value c = 0;

    Value operator()(Point pt) const { return p * pt.x + q * pt.y + c; }
    bool operator==(const AffineForm&) const = default;
};

/// Pointwise minimum of finitely many integer affine forms.
class PLMinFunction {
public:
    PLMinFunction() = default;
    explicit PLMinFunction(std::vector<AffineForm> forms);
    PLMinFunction(std::initializer_list<AffineForm> forms)
        : PLMinFunction(std::vector<AffineForm>(forms)) {}

    const std::vector<AffineForm>& forms() const { return forms_; }

    Value operator()(Point pt) const;

    /// Index of a form achieving the minimum at pt (lowest index wins ties).
    int active_form(Point pt) const;

    /// Same function with `form` added to every member, i.e. F + form.
    PLMinFunction plus(const AffineForm& form) const;

    /// Copy with the constant of form `idx` raised by `delta`.
    PLMinFunction with_bumped_constant(int idx, Value delta) const;

private:
    std::vector<AffineForm> forms_;
};

/// min(0, p*x + q*y).
PLMinFunction edge_function(Value p, Value q);

/// Two primitive slopes spanning a unimodular pair plus integer offsets.
struct DirectionPair {
    Value p1 = 1, q1 = 0;
    Value p2 = 0, q2 = 1;
    Value c1 = 0;
    Value c2 = 0;

    void validate() const;  // throws PreconditionError unless p1*q2 - p2*q1 == 1
};

/// min(0, p1 x + q1 y, p2 x + q2 y + c1).
PLMinFunction vertex_function(const DirectionPair& d);

/// min(0, p1 x + q1 y, p2 x + q2 y + c1, (p1+p2) x + (q1+q2) y + c2).
PLMinFunction node_function(const DirectionPair& d);

/// Evaluate F on every vertex of the domain. On cylinders every form must
/// descend to the quotient (p*period_x + q*period_y == 0 per form).
IntegerField eval_on(const PLMinFunction& F, const DomainPtr& dom);

/// Interior vertices where the field fails to be harmonic.
std::vector<VertexId> deviation_set(const IntegerField& f);
std::vector<VertexId> deviation_set(const PLMinFunction& F, const DomainPtr& dom);

/// Forms that never achieve the minimum anywhere on the domain (reported,
/// never removed).
std::vector<int> redundant_forms(const PLMinFunction& F, const DomainPtr& dom);

/// Every window-bounded component of interior \ D(F) stays within Euclidean
/// distance C of D(F). Components touching the guard band stand in for the
/// unbounded ones and are exempt.
bool is_holeless(const PLMinFunction& F, const DomainPtr& dom, Value C);

/// Conditions (b) and (c) of e-monotonicity for a window field: values never
/// decrease along e, and walking backwards from any flat pair, the first
/// strict decrease happens within distance C of the deviation set. Walks that
/// leave the window before decreasing pass.
bool is_e_increasing(const IntegerField& f, Point e, Value C);

/// f - (p*x + q*y + c) pointwise.
IntegerField shift_by_linear(const IntegerField& f, const AffineForm& form);

/// Extended Euclid: returns {g, u, v} with a*u + b*v = g = gcd(a, b) >= 0.
struct Bezout {
    Value g, u, v;
};
Bezout extended_gcd(Value a, Value b);

/// Canonical reduction of min(p x + q y + a, p' x + q' y + a') to a pure
/// edge min(P x + Q y, 0): P = p - p', Q = q - q', and a translation t with
/// P*t.x + Q*t.y = a - a', so that the smoothing of the pair equals the
/// smoothing of the reduced edge evaluated at the translated point (plus the
/// subtracted linear part).
struct EdgeReduction {
    Value P, Q;
    Point translation;
};
EdgeReduction reduce_edge(Value p, Value q, Value a, Value pp, Value qp, Value ap);

}  // namespace smoothpile
