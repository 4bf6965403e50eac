"""Combinatorial shadow of the quotient construction.

The manifold itself is never built; everything here is exponent bookkeeping.
Charts are indexed by top-dimensional simplices, the gluing data is a matrix
of ring elements per ordered facet pair, and the subgroup cutting the quotient
is presented by one exponent vector per vertex outside a base facet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fans import TopologicalFan
from .ring import ONE, ZERO, RElem, pairing


@dataclass
class KernelPresentation:
    """Generators of the subgroup by which the chart union is divided.

    For the base facet I, each vertex k outside I yields one generator: the
    exponent vector with ONE at slot k, minus the pairing against the chart
    duals on I, and ZERO elsewhere.  Exponents are indexed 1..m.
    """

    base: tuple[int, ...]
    generators: dict  # k -> {j: RElem}

    def exponent(self, k, j) -> RElem:
        return self.generators[k].get(j, ZERO)

    def to_json(self):
        return {
            "base": list(self.base),
            "generators": {
                str(k): {str(j): mu.to_json() for j, mu in exps.items()}
                for k, exps in self.generators.items()
            },
        }


def kernel_presentation(fan: TopologicalFan, facet) -> KernelPresentation:
    base = tuple(sorted(facet))
    if base not in fan.complex.facets or len(base) != fan.n:
        raise ValueError(f"{base} is not a top-dimensional facet")
    duals = fan.dual_basis(base)
    generators = {}
    for k in range(1, fan.m + 1):
        if k in base:
            continue
        exps = {k: ONE}
        for i in base:
            exps[i] = -pairing(duals[i], fan.rvec(k))
        generators[k] = exps
    return KernelPresentation(base, generators)


def kernel_residual(fan: TopologicalFan, pres: KernelPresentation, k):
    """sum_j ray_j * E_j for generator k; the zero vector certifies membership."""
    out = []
    for coord in range(fan.n):
        total = ZERO
        for j, exp in pres.generators[k].items():
            total = total + fan.rvec(j)[coord] * exp
        out.append(total)
    return out


@dataclass
class TransitionMatrix:
    """Exponent matrix of the chart change from facet I to facet J.

    Entry (j, i) is the pairing of the J-chart dual at j with the ray at i;
    the j-th target coordinate is the monomial prod_i w_i^(entry(j, i)).
    """

    source: tuple[int, ...]
    target: tuple[int, ...]
    entries: dict  # (j, i) -> RElem

    def entry(self, j, i) -> RElem:
        return self.entries[(j, i)]

    def to_json(self):
        return {
            "source": list(self.source),
            "target": list(self.target),
            "entries": [
                {"row": j, "col": i, "value": mu.to_json()}
                for (j, i), mu in sorted(self.entries.items())
            ],
        }


def transition_matrix(fan: TopologicalFan, source, target) -> TransitionMatrix:
    src = tuple(sorted(source))
    tgt = tuple(sorted(target))
    for f in (src, tgt):
        if f not in fan.complex.facets or len(f) != fan.n:
            raise ValueError(f"{f} is not a top-dimensional facet")
    duals = fan.dual_basis(tgt)
    entries = {}
    for j in tgt:
        for i in src:
            entries[(j, i)] = pairing(duals[j], fan.rvec(i))
    return TransitionMatrix(src, tgt, entries)


def _compose(second: TransitionMatrix, first: TransitionMatrix) -> dict:
    """Matrix product over the ring; models composing the monomial maps."""
    if second.source != first.target:
        raise ValueError("matrices do not compose")
    out = {}
    for k in second.target:
        for i in first.source:
            total = ZERO
            for j in first.target:
                total = total + second.entry(k, j) * first.entry(j, i)
            out[(k, i)] = total
    return out


@dataclass
class CocycleReport:
    ok: bool
    failure: Optional[dict] = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "failure": self.failure}


def check_cocycle(fan: TopologicalFan) -> CocycleReport:
    """Composition and inverse identities for all facet pairs and triples.

    The triple loop is cubic in the facet count, so the matrices are unpacked
    into plain (b, c, v) tuples and multiplied inline.
    """
    facets = [f for f in fan.complex.facets if len(f) == fan.n]
    n = fan.n
    mats = {}
    for src in facets:
        for tgt in facets:
            tm = transition_matrix(fan, src, tgt)
            mats[(src, tgt)] = [
                [(mu.b, mu.c, mu.v) for i in src for mu in (tm.entry(j, i),)]
                for j in tgt
            ]

    def compose(second, first):
        out = []
        for row2 in second:
            row = []
            for i in range(n):
                b = c = v = 0
                for j in range(n):
                    b2, c2, v2 = row2[j]
                    b1, c1, v1 = first[j][i]
                    b += b2 * b1
                    c += c2 * b1 + v2 * c1
                    v += v2 * v1
                row.append((b, c, v))
            out.append(row)
        return out

    identity = [[(1, 0, 1) if i == j else (0, 0, 0) for i in range(n)] for j in range(n)]

    def equal(a, b):
        return all(
            a[j][i][0] == b[j][i][0] and a[j][i][1] == b[j][i][1] and a[j][i][2] == b[j][i][2]
            for j in range(n)
            for i in range(n)
        )

    for fi in facets:
        for fj in facets:
            if not equal(compose(mats[(fj, fi)], mats[(fi, fj)]), identity):
                return CocycleReport(False, {"kind": "inverse", "pair": [list(fi), list(fj)]})
    for fi in facets:
        for fj in facets:
            for fk in facets:
                if not equal(compose(mats[(fj, fk)], mats[(fi, fj)]), mats[(fi, fk)]):
                    return CocycleReport(
                        False,
                        {"kind": "triple", "facets": [list(fi), list(fj), list(fk)]},
                    )
    return CocycleReport(True)


def check_conjugation_equivariant(fan: TopologicalFan) -> bool:
    """True when every transition exponent commutes with complex conjugation.

    Equivalent to every pairing entry having zero c-part; holds in particular
    whenever the fan is involutive.
    """
    facets = [f for f in fan.complex.facets if len(f) == fan.n]
    for src in facets:
        for tgt in facets:
            mat = transition_matrix(fan, src, tgt)
            if any(mu.c != 0 for mu in mat.entries.values()):
                return False
    return True


@dataclass
class FacePoset:
    """The orbit-space face poset: simplices under reverse inclusion.

    The empty face is the top element (the whole orbit space) and the facets
    are minimal.  ``cube_zero_set`` embeds each face into the unit cube model:
    face J corresponds to the cube face where exactly the coordinates in J
    vanish.
    """

    elements: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def rank(self, element):
        return len(element)

    def rank_counts(self):
        counts = {}
        for e in self.elements:
            counts[len(e)] = counts.get(len(e), 0) + 1
        return counts

    def cube_zero_set(self, element):
        return tuple(element)

    def leq(self, a, b):
        """a <= b in the poset, i.e. the face a is contained in the face b."""
        return set(b) <= set(a)

    def to_json(self):
        return {
            "elements": [list(e) for e in self.elements],
            "covers": [[list(a), list(b)] for a, b in self.covers],
            "rank_counts": {str(k): v for k, v in sorted(self.rank_counts().items())},
        }


def orbit_face_poset(fan: TopologicalFan) -> FacePoset:
    fan.require_valid()
    elements = [()] + list(fan.complex.faces())
    element_set = set(elements)
    covers = []
    for e in elements:
        if len(e) == 0:
            continue
        for drop in e:
            smaller = tuple(v for v in e if v != drop)
            if smaller in element_set:
                covers.append((e, smaller))
    elements.sort(key=lambda t: (len(t), t))
    return FacePoset(tuple(elements), tuple(sorted(covers)))
