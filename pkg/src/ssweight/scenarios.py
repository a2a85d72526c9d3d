"""Builtin validated degenerations used as the test corpus and as input docs.

Every builder returns a ``StrataComplex`` that passes ``validate()``.  The
cohomology is hand-derived from standard geometry:

* ``good_reduction_pn`` -- a single projective-space component, no strata.
* ``ngon`` -- the cycle of N rational curves (totally degenerate genus-one
  fiber); nerve is the N-cycle graph.
* ``ngon_x_p1`` -- the same times a projective line, via the Kunneth builder.
* ``tetrahedron`` -- four rational surfaces glued along the boundary of the
  3-simplex.  Literal planes cannot appear here: the sum of all component
  classes must restrict to zero on every double curve, which forces each
  double curve to be a (-1)-curve on both neighbours.  The components are
  planes blown up in six points (two on each double curve), polarized by the
  anticanonical class, so each double curve has degree one and meets two
  triple points: -1 - 1 + 1 + 1 = 0.
* ``elliptic_stratum`` -- a genus-two degeneration: an elliptic curve and a
  rational curve meeting in two points; carries odd cohomology with the
  standard antisymmetric pairing, so it is not cycle-generated.
* ``cellular`` -- one smooth component whose H^{2k} has rank = number of
  codimension-k cells; the Lefschetz structure is the direct sum of weight
  filtration strings, one per primitive class, with intersection signs
  (-1)^s on the string born in degree 2s.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidParameters
from .linalg import RatMatrix
from .strata import StrataComplex, StratumCohomology


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def label(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(str(v) for _, v in sorted(self.params.items()))
        return f"{self.kind}:{inner}"


KINDS = (
    "good_reduction_pn",
    "ngon",
    "ngon_x_p1",
    "tetrahedron",
    "elliptic_stratum",
    "cellular",
)


def parse_spec(text: str) -> ScenarioSpec:
    """Parse CLI syntax ``kind`` or ``kind:p1,p2,...``."""
    kind, _, rest = text.partition(":")
    if kind not in KINDS:
        raise InvalidParameters(f"unknown scenario kind {kind!r}; known: {', '.join(KINDS)}")
    args = [int(x) for x in rest.split(",")] if rest else []
    if kind == "good_reduction_pn":
        return ScenarioSpec(kind, {"n": args[0] if args else 2})
    if kind == "ngon":
        return ScenarioSpec(kind, {"N": args[0] if args else 3})
    if kind == "ngon_x_p1":
        return ScenarioSpec(kind, {"N": args[0] if args else 3})
    if kind == "cellular":
        if not args:
            raise InvalidParameters("cellular needs cell counts, e.g. cellular:1,2,1")
        return ScenarioSpec(kind, {"cells": tuple(args)})
    if args:
        raise InvalidParameters(f"scenario {kind} takes no parameters")
    return ScenarioSpec(kind)


def build(spec: ScenarioSpec) -> StrataComplex:
    if spec.kind == "good_reduction_pn":
        return good_reduction_pn(spec.params.get("n", 2))
    if spec.kind == "ngon":
        return ngon(spec.params.get("N", 3))
    if spec.kind == "ngon_x_p1":
        return ngon(spec.params.get("N", 3)).product_with_factor(projective_space_cohomology(1))
    if spec.kind == "tetrahedron":
        return tetrahedron()
    if spec.kind == "elliptic_stratum":
        return elliptic_stratum()
    if spec.kind == "cellular":
        return cellular(spec.params["cells"])
    raise InvalidParameters(f"unknown scenario kind {spec.kind!r}")


def builtin_specs() -> list[ScenarioSpec]:
    """The canonical corpus every quantified test runs over."""
    return [
        ScenarioSpec("good_reduction_pn", {"n": 1}),
        ScenarioSpec("good_reduction_pn", {"n": 2}),
        ScenarioSpec("good_reduction_pn", {"n": 3}),
        ScenarioSpec("ngon", {"N": 3}),
        ScenarioSpec("ngon", {"N": 5}),
        ScenarioSpec("ngon_x_p1", {"N": 3}),
        ScenarioSpec("tetrahedron"),
        ScenarioSpec("elliptic_stratum"),
        ScenarioSpec("cellular", {"cells": (1, 1)}),
        ScenarioSpec("cellular", {"cells": (1, 2, 1)}),
        ScenarioSpec("cellular", {"cells": (1, 3, 3, 1)}),
    ]


# -- reusable strata ---------------------------------------------------------


def point_cohomology(count: int = 1) -> StratumCohomology:
    return StratumCohomology(
        dim=0,
        dims={0: count},
        pairing={0: RatMatrix.identity(count)},
        lefschetz={},
        slope_pure=True,
    )


def projective_space_cohomology(n: int) -> StratumCohomology:
    one = RatMatrix.identity(1)
    return StratumCohomology(
        dim=n,
        dims={2 * c: 1 for c in range(n + 1)},
        pairing={2 * c: one for c in range(n + 1)},
        lefschetz={2 * c: one for c in range(n)},
        slope_pure=True,
    )


def elliptic_curve_cohomology(degree: int = 1) -> StratumCohomology:
    return StratumCohomology(
        dim=1,
        dims={0: 1, 1: 2, 2: 1},
        pairing={
            0: RatMatrix.identity(1),
            1: RatMatrix.from_rows([[0, 1], [-1, 0]]),
        },
        lefschetz={0: RatMatrix.from_rows([[degree]])},
        slope_pure=False,
    )


def cellular_cohomology(cells) -> StratumCohomology:
    """One stratum with H^{2k} of rank cells[k].

    The cell vector must be palindromic and unimodal: those are forced for a
    smooth projective cellular variety by Poincare duality and hard Lefschetz,
    and the construction below needs them to split H^* into Lefschetz strings.
    """
    cells = [int(c) for c in cells]
    n = len(cells) - 1
    if n < 0 or any(c < 1 for c in (cells[0], cells[-1])) or any(c < 0 for c in cells):
        raise InvalidParameters("cell counts must be nonnegative with nonzero ends")
    if cells != cells[::-1]:
        raise InvalidParameters("cell counts must be palindromic (Poincare duality)")
    half = (n + 2) // 2
    prim = []
    prev = 0
    for s in range(half):
        if cells[s] < prev:
            raise InvalidParameters("cell counts must be unimodal (hard Lefschetz)")
        prim.append(cells[s] - prev)
        prev = cells[s]

    def basis(k):
        # string born in degree 2s lives through degrees 2s..2(n-s)
        return [
            (s, t)
            for s in range(min(k, n - k) + 1)
            for t in range(prim[s] if s < len(prim) else 0)
        ]

    dims = {2 * k: len(basis(k)) for k in range(n + 1)}
    pairing = {}
    lefschetz = {}
    for k in range(n + 1):
        bk = basis(k)
        bdual = basis(n - k)
        pairing[2 * k] = RatMatrix(
            len(bk),
            len(bdual),
            [
                [(-1) ** s if (s, t) == (s2, t2) else 0 for (s2, t2) in bdual]
                for (s, t) in bk
            ],
        )
        if k < n:
            bup = basis(k + 1)
            lefschetz[2 * k] = RatMatrix(
                len(bup),
                len(bk),
                [
                    [1 if (s, t) == (s2, t2) else 0 for (s2, t2) in bk]
                    for (s, t) in bup
                ],
            )
    return StratumCohomology(
        dim=n, dims=dims, pairing=pairing, lefschetz=lefschetz, slope_pure=True
    )


# -- scenario builders --------------------------------------------------------


def good_reduction_pn(n: int) -> StrataComplex:
    if n < 1:
        raise InvalidParameters("good_reduction_pn needs n >= 1")
    return StrataComplex(
        name=f"good_reduction_pn:{n}",
        n=n,
        components=["Y1"],
        faces={(1,): projective_space_cohomology(n)},
        restrictions={},
    )


def ngon(N: int) -> StrataComplex:
    if N < 3:
        raise InvalidParameters("ngon needs N >= 3")
    faces = {}
    restrictions = {}
    for i in range(1, N + 1):
        faces[(i,)] = projective_space_cohomology(1)
    for i in range(1, N + 1):
        j = i % N + 1
        edge = tuple(sorted((i, j)))
        faces[edge] = point_cohomology(1)
        for v in edge:
            restrictions[((v,), edge)] = {0: RatMatrix.identity(1)}
    return StrataComplex(
        name=f"ngon:{N}",
        n=1,
        components=[f"C{i}" for i in range(1, N + 1)],
        faces=faces,
        restrictions=restrictions,
    )


def elliptic_stratum() -> StrataComplex:
    two_points = point_cohomology(2)
    ones = RatMatrix.from_rows([[1], [1]])
    return StrataComplex(
        name="elliptic_stratum",
        n=1,
        components=["E", "R"],
        faces={
            (1,): elliptic_curve_cohomology(degree=1),
            (2,): projective_space_cohomology(1),
            (1, 2): two_points,
        },
        restrictions={
            ((1,), (1, 2)): {0: ones},
            ((2,), (1, 2)): {0: ones},
        },
    )


def tetrahedron() -> StrataComplex:
    verts = (1, 2, 3, 4)
    faces = {}
    restrictions = {}

    def others(i):
        return [j for j in verts if j != i]

    # component surfaces: plane blown up in six points, anticanonical polarization
    for i in verts:
        ex = others(i)  # three double curves through this component
        h2 = 1 + 2 * len(ex)
        pairing2 = RatMatrix.from_rows(
            [[(1 if r == 0 else -1) if r == c else 0 for c in range(h2)] for r in range(h2)]
        )
        anticanonical = [[3]] + [[-1]] * (h2 - 1)
        l0 = RatMatrix.from_rows(anticanonical)  # H^0 -> H^2
        l2 = RatMatrix.from_rows([[3] + [1] * (h2 - 1)])  # H^2 -> H^4
        faces[(i,)] = StratumCohomology(
            dim=2,
            dims={0: 1, 2: h2, 4: 1},
            pairing={0: RatMatrix.identity(1), 2: pairing2},
            lefschetz={0: l0, 2: l2},
            slope_pure=True,
        )
    # double curves and triple points
    for a in range(4):
        for b in range(a + 1, 4):
            faces[(verts[a], verts[b])] = projective_space_cohomology(1)
    triples = [
        (verts[a], verts[b], verts[c])
        for a in range(4)
        for b in range(a + 1, 4)
        for c in range(b + 1, 4)
    ]
    for t in triples:
        faces[t] = point_cohomology(1)

    # restrictions component -> double curve: degree 0 is the unit; degree 2
    # is intersection with the strict transform l - e_{j,1} - e_{j,2}
    for i in verts:
        ex = others(i)
        for j in ex:
            edge = tuple(sorted((i, j)))
            row = [0] * (1 + 2 * len(ex))
            row[0] = 1
            pos = ex.index(j)
            row[1 + 2 * pos] = 1
            row[2 + 2 * pos] = 1
            restrictions[((i,), edge)] = {
                0: RatMatrix.identity(1),
                2: RatMatrix.from_rows([row]),
            }
    # double curve -> triple point: unit in degree 0
    for t in triples:
        for a in range(3):
            sub = t[:a] + t[a + 1 :]
            restrictions[(sub, t)] = {0: RatMatrix.identity(1)}

    return StrataComplex(
        name="tetrahedron",
        n=2,
        components=[f"S{i}" for i in verts],
        faces=faces,
        restrictions=restrictions,
    )


def cellular(cells) -> StrataComplex:
    coh = cellular_cohomology(cells)
    return StrataComplex(
        name="cellular:" + ",".join(str(c) for c in cells),
        n=coh.dim,
        components=["Z1"],
        faces={(1,): coh},
        restrictions={},
    )
