"""Empirical distributions of rooted ball types and convergence diagnostics.

Frequencies are exact rationals throughout: the counting identities the
verification modules check hold exactly at finite n, and float drift would
turn identity checks into tolerance checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import ceil

from .canonical import ball_class, colored_type
from .coloring import ColoringBundle, typed_ball
from .errors import ValidationError
from .graphs import Graph, extract_ball


@dataclass(frozen=True)
class TypeDistribution:
    """Tally of canonical r-ball types over all vertices of one graph."""

    r: int
    d: int
    n: int
    colored: bool
    counts: dict

    def __post_init__(self):
        if sum(self.counts.values()) != self.n:
            raise ValidationError("type counts do not sum to the vertex count")
        if any(c < 1 for c in self.counts.values()):
            raise ValidationError("zero-count type in distribution")

    def frequency(self, t) -> Fraction:
        return Fraction(self.counts.get(t, 0), self.n)

    def support(self) -> list:
        return sorted(self.counts, key=lambda t: t.code)

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "n": self.n,
            "colored": self.colored,
            "entries": [
                {
                    "code": t.hex,
                    "count": self.counts[t],
                    "frequency": str(Fraction(self.counts[t], self.n)),
                }
                for t in self.support()
            ],
        }


def distribution(g: Graph, r: int, bundle: ColoringBundle | None = None) -> TypeDistribution:
    """Per-vertex ball types at radius r, tallied with exact frequencies.

    With a bundle the colored types are used, otherwise the uncolored
    classes. Identical labeled balls share one canonicalization.
    """
    if r < 0:
        raise ValidationError(f"radius must be >= 0, got {r}")
    if bundle is not None and bundle.R < r:
        raise ValidationError(f"bundle depth {bundle.R} < radius {r}")
    counts: dict = {}
    cache: dict = {}
    for v in range(g.n):
        if bundle is None:
            key = extract_ball(g, v, r)
            t = cache.get(key)
            if t is None:
                t = ball_class(key)
                cache[key] = t
        else:
            key = typed_ball(g, bundle, v, r)
            t = cache.get(key)
            if t is None:
                t = colored_type(key)
                cache[key] = t
        counts[t] = counts.get(t, 0) + 1
    return TypeDistribution(r=r, d=g.d, n=g.n, colored=bundle is not None, counts=counts)


def tv_distance(p: TypeDistribution, q: TypeDistribution) -> Fraction:
    """Total variation distance between two type distributions, exact."""
    if p.r != q.r:
        raise ValidationError(f"radius mismatch: {p.r} vs {q.r}")
    if p.colored != q.colored:
        raise ValidationError("cannot compare colored with uncolored distributions")
    if p.d != q.d:
        raise ValidationError(f"degree bound mismatch: {p.d} vs {q.d}")
    keys = set(p.counts) | set(q.counts)
    total = sum((abs(p.frequency(t) - q.frequency(t)) for t in keys), Fraction(0))
    return total / 2


def aggregate(dist: TypeDistribution, mapper) -> dict:
    """Pushforward of a distribution under a map on types; values are exact."""
    out: dict = {}
    for t, c in dist.counts.items():
        image = mapper(t)
        out[image] = out.get(image, Fraction(0)) + Fraction(c, dist.n)
    return out


def _as_fraction(epsilon) -> Fraction:
    if isinstance(epsilon, Fraction):
        return epsilon
    if isinstance(epsilon, int):
        return Fraction(epsilon)
    # decimal string round-trip keeps 1e-3 meaning exactly 1/1000
    return Fraction(Decimal(str(epsilon)))


@dataclass(frozen=True)
class SequenceReport:
    """Distributions, consecutive TV distances, and per-radius verdicts."""

    R: int
    d: int
    epsilon: Fraction
    sizes: tuple
    colored: bool
    distributions: tuple  # [graph index][r - 1]
    tv: dict  # r -> tuple of consecutive TV distances
    verdicts: dict  # r -> bool
    tail_length: int

    def to_json_dict(self) -> dict:
        return {
            "R": self.R,
            "d": self.d,
            "epsilon": str(self.epsilon),
            "sizes": list(self.sizes),
            "colored": self.colored,
            "tail_length": self.tail_length,
            "distributions": [
                [dist.to_json_dict() for dist in per_graph]
                for per_graph in self.distributions
            ],
            "tv": {str(r): [str(x) for x in xs] for r, xs in self.tv.items()},
            "verdicts": {str(r): v for r, v in self.verdicts.items()},
        }


def _verdict(tvs, eps: Fraction, tail: int) -> bool:
    # converged iff the latest distance is within tolerance and the recent
    # tail is either entirely within tolerance or non-increasing
    if not tvs:
        return False
    if tvs[-1] > eps:
        return False
    recent = tvs[-tail:]
    if all(x <= eps for x in recent):
        return True
    return all(recent[i] >= recent[i + 1] for i in range(len(recent) - 1))


def analyze_sequence(
    graphs,
    R: int,
    epsilon,
    bundles=None,
) -> SequenceReport:
    """Convergence diagnostics for an ordered graph sequence at radii 1..R."""
    if len(graphs) < 2:
        raise ValidationError("sequence analysis needs at least two graphs")
    if R < 1:
        raise ValidationError(f"depth must be >= 1, got {R}")
    d = graphs[0].d
    for g in graphs:
        if g.d != d:
            raise ValidationError(f"mixed degree bounds in sequence: {d} vs {g.d}")
    if bundles is not None:
        if len(bundles) != len(graphs):
            raise ValidationError("one bundle per graph required")
        for b in bundles:
            if b.R < R:
                raise ValidationError(f"bundle depth {b.R} < requested depth {R}")
    eps = _as_fraction(epsilon)
    if eps <= 0:
        raise ValidationError("tolerance must be positive")

    dists = []
    for i, g in enumerate(graphs):
        bundle = bundles[i] if bundles is not None else None
        dists.append(tuple(distribution(g, r, bundle) for r in range(1, R + 1)))

    k = len(graphs)
    tail = ceil(k / 2)
    tv: dict = {}
    verdicts: dict = {}
    for r in range(1, R + 1):
        tvs = tuple(tv_distance(dists[i][r - 1], dists[i + 1][r - 1]) for i in range(k - 1))
        tv[r] = tvs
        verdicts[r] = _verdict(tvs, eps, tail)

    return SequenceReport(
        R=R,
        d=d,
        epsilon=eps,
        sizes=tuple(g.n for g in graphs),
        colored=bundles is not None,
        distributions=tuple(dists),
        tv=tv,
        verdicts=verdicts,
        tail_length=tail,
    )
