"""Shared test helpers: independent mini-oracles and a generator of random
valid configurations (graph curves, cellular components, and products)."""

from __future__ import annotations

import random
from fractions import Fraction

from ssweight.linalg import RatMatrix
from ssweight.scenarios import (
    cellular_cohomology,
    elliptic_curve_cohomology,
    point_cohomology,
    projective_space_cohomology,
)
from ssweight.strata import StrataComplex, StratumCohomology


def independent_rank(rows) -> int:
    """Plain Gaussian elimination over Fraction, written separately from the
    library so rank pins do not depend on the code under test."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(nrows):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def cycle_incidence(N: int):
    """Signed vertex-to-edge incidence of the N-cycle: edge {i, j} with
    i < j reads value at j minus value at i."""
    edges = sorted(tuple(sorted((i, i % N + 1))) for i in range(1, N + 1))
    rows = []
    for (i, j) in edges:
        row = [0] * N
        row[j - 1] = 1
        row[i - 1] = -1
        rows.append(row)
    return rows


def graph_curve(edges, nv, *, degrees=None, elliptic=()):
    """A curve configuration from a connected graph: one rational (or
    elliptic) curve per vertex, one point per edge."""
    degrees = degrees or {}
    faces = {}
    restrictions = {}
    for v in range(1, nv + 1):
        if v in elliptic:
            faces[(v,)] = elliptic_curve_cohomology(degree=degrees.get(v, 1))
        else:
            deg = degrees.get(v, 1)
            faces[(v,)] = StratumCohomology(
                dim=1,
                dims={0: 1, 2: 1},
                pairing={0: RatMatrix.identity(1)},
                lefschetz={0: RatMatrix.from_rows([[deg]])},
                slope_pure=True,
            )
    for (i, j) in edges:
        edge = tuple(sorted((i, j)))
        faces[edge] = point_cohomology(1)
        for v in edge:
            restrictions[((v,), edge)] = {0: RatMatrix.identity(1)}
    return StrataComplex(
        name=f"graph_curve:{nv}v{len(edges)}e",
        n=1,
        components=[f"C{v}" for v in range(1, nv + 1)],
        faces=faces,
        restrictions=restrictions,
    )


def random_graph_curve(rng: random.Random) -> StrataComplex:
    nv = rng.randint(2, 6)
    edges = set()
    order = list(range(2, nv + 1))
    rng.shuffle(order)
    for v in order:  # random spanning tree keeps the fiber connected
        u = rng.randint(1, v - 1)
        edges.add(tuple(sorted((u, v))))
    for _ in range(rng.randint(0, 3)):
        u, v = rng.sample(range(1, nv + 1), 2) if nv >= 2 else (1, 1)
        if u != v:
            edges.add(tuple(sorted((u, v))))
    degrees = {v: rng.randint(1, 3) for v in range(1, nv + 1)}
    elliptic = tuple(v for v in range(1, nv + 1) if rng.random() < 0.2)
    return graph_curve(sorted(edges), nv, degrees=degrees, elliptic=elliptic)


def random_cell_vector(rng: random.Random, n: int):
    half = (n + 2) // 2
    prim = [1] + [rng.randint(0, 2) for _ in range(half - 1)]
    c = []
    total = 0
    for s in range(half):
        total += prim[s]
        c.append(total)
    full = c + c[::-1] if n % 2 else c + c[:-1][::-1]
    return tuple(full)


def random_valid_complex(rng: random.Random) -> StrataComplex:
    """Small valid configuration: a graph curve, a cellular component, or a
    product of one of those with a cellular factor."""
    roll = rng.random()
    if roll < 0.45:
        return random_graph_curve(rng)
    if roll < 0.70:
        n = rng.randint(1, 3)
        coh = cellular_cohomology(random_cell_vector(rng, n))
        return StrataComplex(
            name="random_cellular",
            n=n,
            components=["Z1"],
            faces={(1,): coh},
            restrictions={},
        )
    base = random_graph_curve(rng)
    if rng.random() < 0.5:
        factor = projective_space_cohomology(rng.randint(1, 2))
    else:
        factor = cellular_cohomology(random_cell_vector(rng, rng.randint(1, 2)))
    return base.product_with_factor(factor)
