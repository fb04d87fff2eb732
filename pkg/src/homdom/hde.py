"""Homomorphism domination exponents via the min-max linear program.

The exponent of (F1, F2) with F1 chordal and F2 series-parallel is the
minimum over the polytope of normalized polymatroidal functions p of the
maximum over homomorphisms phi: F1 -> F2 of an inclusion-exclusion
functional of p.  The max decomposes over connected components of F1, so
the LP gets one epigraph variable per distinct component instead of one
row per global homomorphism (whose number is a product over components
and must never be expanded).

Two interchangeable objective builders are provided: the subset form
(alternating sum over sets of maximal cliques with common intersection)
is the ground truth; the clique-tree form (one positive term per clique,
one negative term per separator) is the linear-size default, gated by an
equivalence test in the suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadIndex,
    BadParity,
    GroundTooLarge,
    NoHomomorphism,
    NotChordal,
    NotMember,
    NotSeriesParallel,
    RatlpError,
)
from .graphs import (
    Graph,
    clique_tree,
    disjoint_union,
    expand_components,
    is_chordal,
    is_series_parallel,
    maximal_cliques,
    path,
)
from .homs import Homomorphism, enumerate_homs
from .polytope import GROUND_CAP, SetFunction, build_polytope, is_member, p_star
from . import lp as ratlp


@dataclass(frozen=True)
class ObjectiveProfile:
    """Linear functional p -> sum coeff * p(subset) induced by one
    homomorphism; the empty-set variable never appears."""

    terms: tuple[tuple[int, Fraction], ...]  # (target subset mask, coefficient)
    phi: Homomorphism
    form: str  # "subset" | "clique-tree"

    def evaluate(self, p: SetFunction) -> Fraction:
        return sum((c * p[mask] for mask, c in self.terms), Fraction(0))


def _finish_profile(acc: dict[int, int], phi: Homomorphism, form: str) -> ObjectiveProfile:
    terms = tuple((mask, Fraction(acc[mask])) for mask in sorted(acc) if acc[mask])
    return ObjectiveProfile(terms, phi, form)


def objective_subset_form(F1: Graph, phi: Homomorphism, F2: Graph) -> ObjectiveProfile:
    """Alternating sum over subsets S of maximal cliques of F1 with
    nonempty common intersection; sign -(-1)^|S|, coefficients accumulated
    on the image subset phi(intersection of S)."""
    cliques = maximal_cliques(F1)
    acc: dict[int, int] = {}
    full = (1 << F1.n) - 1

    def rec(start: int, inter: int, size: int):
        for idx in range(start, len(cliques)):
            ni = inter & cliques[idx]
            if not ni:
                continue  # all supersets share the empty intersection
            img = phi.image_mask(ni)
            acc[img] = acc.get(img, 0) + (1 if (size + 1) % 2 else -1)
            rec(idx + 1, ni, size + 1)

    rec(0, full, 0)
    return _finish_profile(acc, phi, "subset")


def objective_clique_tree_form(F1: Graph, phi: Homomorphism, F2: Graph) -> ObjectiveProfile:
    """+1 per clique-tree node at the image of its clique, -1 per tree edge
    at the image of its separator; summed over the forest for unions."""
    tree = clique_tree(F1)  # raises NotChordal
    acc: dict[int, int] = {}
    for cl in tree.cliques:
        img = phi.image_mask(cl)
        acc[img] = acc.get(img, 0) + 1
    for sep in tree.separators:
        img = phi.image_mask(sep)
        acc[img] = acc.get(img, 0) - 1
    return _finish_profile(acc, phi, "clique-tree")


_FORMS = {
    "subset": objective_subset_form,
    "clique-tree": objective_clique_tree_form,
}


@dataclass(frozen=True)
class HdeResult:
    """Exact domination exponent plus the certificates behind it."""

    value: Fraction
    point: SetFunction  # optimal p, a member of the polytope
    active: tuple  # per distinct component: (component, multiplicity, argmax homs)
    lp_vars: int
    lp_constraints: int
    lp_pivots: int


def compute_hde(F1: Graph, F2: Graph, objective_form: str = "clique-tree") -> HdeResult:
    """Exact HDE(F1; F2) for chordal F1 and series-parallel F2.

    Builds the LP with variables p(A) for nonempty proper subsets A of
    V(F2) (the empty set is fixed to 0, the full set substituted by 1) and
    one epigraph variable per distinct connected component of F1, bounded
    below by the objective of each homomorphism of that component.
    """
    ok, _ = is_chordal(F1)
    if not ok:
        raise NotChordal("HDE requires a chordal F1")
    if not is_series_parallel(F2):
        raise NotSeriesParallel("HDE requires a series-parallel F2")
    if F2.n > GROUND_CAP:
        raise GroundTooLarge(f"|V(F2)|={F2.n} exceeds cap {GROUND_CAP}")
    build = _FORMS[objective_form]

    components = expand_components(F1)
    profiles_per_comp = []
    for comp, mult in components:
        by_terms: dict[tuple, list[Homomorphism]] = {}
        for hom in enumerate_homs(comp, F2):
            prof = build(comp, hom, F2)
            by_terms.setdefault(prof.terms, []).append(hom)
        if not by_terms:
            raise NoHomomorphism(
                f"component {comp!r} admits no homomorphism into the target"
            )
        profiles_per_comp.append(by_terms)

    n_sub = 1 << F2.n
    full = n_sub - 1
    var_of = {}
    for mask in range(1, full):
        var_of[mask] = len(var_of)
    n_p = len(var_of)
    z_of = [n_p + ci for ci in range(len(components))]
    n_vars = n_p + len(components)

    rows = []
    for con in build_polytope(F2).constraints:
        terms = []
        rhs = con.rhs
        for mask, coeff in con.terms:
            if mask == 0:
                continue  # p(empty) = 0
            if mask == full:
                rhs -= coeff  # p(V) = 1
                continue
            terms.append((var_of[mask], coeff))
        if not terms:
            satisfied = rhs == 0 if con.rel == "=" else rhs >= 0
            if not satisfied:  # pragma: no cover - the system is consistent
                raise RatlpError("polytope constraint became infeasible constant")
            continue
        rows.append((terms, con.rel, rhs))
    for ci, by_terms in enumerate(profiles_per_comp):
        for terms in by_terms:
            row = [(z_of[ci], Fraction(1))]
            rhs = Fraction(0)
            for mask, coeff in terms:
                if mask == full:
                    rhs += coeff
                else:
                    row.append((var_of[mask], -coeff))
            rows.append((row, ">=", rhs))

    objective = [(z_of[ci], Fraction(mult)) for ci, (_, mult) in enumerate(components)]
    bounds = [Fraction(0)] * n_p + [None] * len(components)
    program = ratlp.make_lp(n_vars, objective, rows, sense="min", lower_bounds=bounds)
    outcome = ratlp.solve(program)
    if outcome.status != "optimal":
        raise RatlpError(f"HDE linear program came back {outcome.status}")
    if not ratlp.verify(program, outcome):  # pragma: no cover - safety net
        raise RatlpError("HDE LP outcome failed verification")

    values = [Fraction(0)] * n_sub
    values[full] = Fraction(1)
    for mask, idx in var_of.items():
        values[mask] = outcome.point[idx]
    p_opt = SetFunction(F2.n, tuple(values))
    member, violated = is_member(p_opt, F2)
    if not member:  # pragma: no cover - safety net
        raise RatlpError(f"optimal p violates {len(violated)} polytope constraints")

    active = []
    for ci, (comp, mult) in enumerate(components):
        z_val = outcome.point[z_of[ci]]
        argmax: list[Homomorphism] = []
        for terms, homs in profiles_per_comp[ci].items():
            prof = ObjectiveProfile(terms, homs[0], objective_form)
            if prof.evaluate(p_opt) == z_val:
                argmax.extend(homs)
        active.append((comp, mult, tuple(argmax)))

    return HdeResult(
        value=outcome.value,
        point=p_opt,
        active=tuple(active),
        lp_vars=n_vars,
        lp_constraints=len(program.rows),
        lp_pivots=outcome.pivots,
    )


# -- the explicit certificates for HDE(P0^2 P_{t+2}^t; P_t) ---------------


def phi_i(t: int, i: int) -> Homomorphism:
    """The fold of the (t+2)-path onto the t-path that walks edge i of the
    target (1-based, as in {i, i+1}) three times and every other edge once:
    vertex j maps to j for j <= i and to j-2 afterwards (0-based)."""
    if t < 1:
        raise BadIndex("t must be at least 1")
    if not 1 <= i <= t:
        raise BadIndex(f"i must be in 1..{t}, got {i}")
    mapping = tuple(j if j <= i else j - 2 for j in range(t + 3))
    return Homomorphism(path(t + 2), path(t), mapping)


def psi(t: int) -> Homomorphism:
    """The certificate map from P0^2 P_{t+2}^t onto P_t: the two isolated
    vertices go to the two path ends, the i-th long-path copy folds via
    phi_i."""
    if t < 1 or t % 2 == 0:
        raise BadParity(f"t must be odd and positive, got {t}")
    F1 = disjoint_union([(path(0), 2), (path(t + 2), t)])
    mapping = [0, t]
    for i in range(1, t + 1):
        mapping.extend(phi_i(t, i).map)
    return Homomorphism(F1, path(t), tuple(mapping))


def certify_upper(t: int) -> Fraction:
    """Maximum objective value at the averaged indicator point, taken over
    all homomorphisms from P0^2 P_{t+2}^t via component decomposition.

    Certifies HDE <= t+2 (the returned maximum equals t+2).
    """
    if t < 1 or t % 2 == 0:
        raise BadParity(f"t must be odd and positive, got {t}")
    F2 = path(t)
    star = p_star(t)
    total = Fraction(0)
    for comp, mult in ((path(0), 2), (path(t + 2), t)):
        best = None
        for hom in enumerate_homs(comp, F2):
            val = objective_subset_form(comp, hom, F2).evaluate(star)
            if best is None or val > best:
                best = val
        total += mult * best
    return total


def certify_lower(t: int, p: SetFunction) -> Fraction:
    """Objective value of the explicit map psi at an arbitrary polytope
    member p; equals (t+2) * p(V) = t+2, certifying HDE >= t+2."""
    if t < 1 or t % 2 == 0:
        raise BadParity(f"t must be odd and positive, got {t}")
    ok, violated = is_member(p, path(t))
    if not ok:
        raise NotMember(f"p violates {len(violated)} polytope constraints")
    h = psi(t)
    return objective_subset_form(h.source, h, path(t)).evaluate(p)
