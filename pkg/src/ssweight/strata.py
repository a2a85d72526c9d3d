"""Combinatorial model of a strictly semistable configuration.

A configuration is stored as the nerve of its irreducible components together
with the graded cohomology of every stratum: for a set ``I`` of component
indices the stratum is the ``|I|``-fold intersection, of dimension
``n + 1 - |I|``.  The level-``k`` space is the disjoint union of all strata
with ``|I| = k``.

Three families of maps live on this data:

* ``rho`` -- the alternating sum of restriction maps from level ``k`` to
  level ``k+1``; the block for a face ``J = {j_0 < ... < j_k}`` and its
  subface ``J - {j_a}`` carries the simplicial sign ``(-1)^a``.
* ``tau`` -- the Gysin maps from level ``k`` to level ``k-1``, never user
  input: ``tau`` is derived as the exact adjoint of the signed ``rho`` with
  respect to the Poincare pairings, ``<tau x, y> = <x, rho y>``.  With this
  convention ``rho^2 = 0``, ``tau^2 = 0`` hold everywhere and
  ``rho tau + tau rho = 0`` holds on every level >= 2; on level 1 the mixed
  relation has no meaning (there is no level 0 for ``tau`` to pass through)
  and the spectral sequence never uses it.
* ``lefschetz`` -- cup product with an ample class, degree +2 on each
  stratum, required to commute with restrictions and to be self-adjoint.

Pairing matrices are stored per degree ``m`` as the matrix of
``H^m x H^{2d-m} -> Q`` where ``d`` is the stratum dimension; the complement
is filled in automatically using graded symmetry ``<y,x> = (-1)^{|x||y|}<x,y>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidParameters, MissingRestriction, SchemaError
from .linalg import RatMatrix, assemble_blocks, format_rat, rat

Face = tuple[int, ...]


def _face(indices) -> Face:
    t = tuple(sorted(int(i) for i in indices))
    if not t or len(set(t)) != len(t) or t[0] < 1:
        raise SchemaError(f"face indices must be a nonempty set of positive ints: {indices}")
    return t


def _face_str(indices: Face) -> str:
    return "{" + ",".join(str(i) for i in indices) + "}"


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product, row index = (a-row, b-row) with a-row major."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [[Fraction(0)] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.entries[i][j]
            if x == 0:
                continue
            for p in range(b.rows):
                for q in range(b.cols):
                    out[i * b.rows + p][j * b.cols + q] = x * b.entries[p][q]
    return RatMatrix(rows, cols, out)


@dataclass
class StratumCohomology:
    """Graded cohomology of one stratum (or of a product factor).

    dims: degree -> dimension (only nonzero degrees stored).
    pairing: degree m -> matrix of H^m x H^{2*dim-m} -> Q.
    lefschetz: degree m -> matrix of H^m -> H^{m+2}; absent means zero.
    slope_pure: whether H^{2c} is pure of Frobenius slope c with vanishing
        odd cohomology (cycle-generated stratum).
    """

    dim: int
    dims: dict[int, int]
    pairing: dict[int, RatMatrix]
    lefschetz: dict[int, RatMatrix]
    slope_pure: bool = False
    labels: dict[int, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {int(m): int(d) for m, d in self.dims.items() if int(d) != 0}
        self.pairing = {int(m): p for m, p in self.pairing.items()}
        self.lefschetz = {int(m): p for m, p in self.lefschetz.items()}
        # fill complementary pairings by graded symmetry
        for m in sorted(self.pairing):
            mc = 2 * self.dim - m
            if mc not in self.pairing:
                sign = -1 if m % 2 else 1
                self.pairing[mc] = self.pairing[m].transpose().scale(sign)

    def dim_in(self, m: int) -> int:
        return self.dims.get(m, 0)

    def degrees(self):
        return sorted(self.dims)

    def lefschetz_matrix(self, m: int) -> RatMatrix:
        if m in self.lefschetz:
            return self.lefschetz[m]
        return RatMatrix.zeros(self.dim_in(m + 2), self.dim_in(m))

    def label_list(self, m: int) -> list[str]:
        if m in self.labels:
            return list(self.labels[m])
        return [f"H{m}[{i}]" for i in range(self.dim_in(m))]


@dataclass
class GradedSpace:
    """Direct sum of the degree-``m`` cohomology over the faces of one level."""

    level: int
    faces: list[Face]
    dims: dict[int, int]
    offsets: dict[int, list[tuple[Face, int, int]]]  # m -> [(face, offset, dim)]

    def dim_in(self, m: int) -> int:
        return self.dims.get(m, 0)


@dataclass
class Violation:
    code: str
    location: str
    message: str
    witness: dict | None = None

    def to_dict(self):
        return {
            "code": self.code,
            "location": self.location,
            "message": self.message,
            "witness": self.witness,
        }


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }

    def summary(self) -> str:
        if self.ok:
            return "valid: all structural checks passed"
        lines = [f"invalid: {len(self.violations)} violation(s)"]
        for v in self.violations:
            lines.append(f"  [{v.code}] {v.location}: {v.message}")
        return "\n".join(lines)


class StrataComplex:
    """Nerve plus per-stratum cohomological data; immutable after loading."""

    def __init__(self, name, n, components, faces, restrictions):
        self.name = str(name)
        self.n = int(n)
        self.components = list(components)
        self.faces: dict[Face, StratumCohomology] = {
            _face(f): coh for f, coh in faces.items()
        }
        self.restrictions: dict[tuple[Face, Face], dict[int, RatMatrix]] = {
            (_face(a), _face(b)): {int(m): mat for m, mat in maps.items()}
            for (a, b), maps in restrictions.items()
        }
        self._tau_cache: dict[tuple[int, int], RatMatrix] = {}
        self._level_cache: dict[int, GradedSpace] = {}

    # -- basic structure ---------------------------------------------------

    @property
    def max_level(self) -> int:
        return max((len(f) for f in self.faces), default=0)

    @property
    def cycle_generated(self) -> bool:
        return all(coh.slope_pure for coh in self.faces.values())

    def face_dim(self, f: Face) -> int:
        return self.n + 1 - len(f)

    def faces_at(self, k: int) -> list[Face]:
        return sorted(f for f in self.faces if len(f) == k)

    def level(self, k: int) -> GradedSpace:
        """Direct sum over faces with ``|I| = k``, with summand offsets."""
        if k < 1:
            raise ValueError("levels are indexed from 1")
        if k in self._level_cache:
            return self._level_cache[k]
        faces = self.faces_at(k)
        dims: dict[int, int] = {}
        offsets: dict[int, list[tuple[Face, int, int]]] = {}
        degrees = sorted({m for f in faces for m in self.faces[f].degrees()})
        for m in degrees:
            off = 0
            table = []
            for f in faces:
                d = self.faces[f].dim_in(m)
                if d:
                    table.append((f, off, d))
                    off += d
            if off:
                dims[m] = off
                offsets[m] = table
        gs = GradedSpace(k, faces, dims, offsets)
        self._level_cache[k] = gs
        return gs

    def level_dim(self, k: int, m: int) -> int:
        if k < 1 or k > self.max_level:
            return 0
        return self.level(k).dim_in(m)

    # -- assembled matrices --------------------------------------------------

    def level_pairing(self, k: int, m: int) -> RatMatrix:
        """Poincare pairing H^m(level k) x H^{m'}(level k), block-diagonal."""
        mc = 2 * (self.n + 1 - k) - m
        gs = self.level(k) if 1 <= k <= self.max_level else None
        row_table = gs.offsets.get(m, []) if gs else []
        col_table = gs.offsets.get(mc, []) if gs else []
        row_dims = [d for _, _, d in row_table]
        col_dims = [d for _, _, d in col_table]
        col_pos = {f: j for j, (f, _, _) in enumerate(col_table)}
        blocks = {}
        for i, (f, _, dm) in enumerate(row_table):
            j = col_pos.get(f)
            if j is None:
                continue
            coh = self.faces[f]
            p = coh.pairing.get(m)
            if p is None:
                p = RatMatrix.zeros(dm, coh.dim_in(mc))
            blocks[(i, j)] = p
        if not row_dims or not col_dims:
            return RatMatrix.zeros(sum(row_dims), sum(col_dims))
        return assemble_blocks(row_dims, col_dims, blocks)

    def level_lefschetz(self, k: int, m: int) -> RatMatrix:
        src = self.level(k)
        dst_dim = self.level_dim(k, m + 2)
        blocks = {}
        dst_table = {f: i for i, (f, _, _) in enumerate(src.offsets.get(m + 2, []))}
        src_table = src.offsets.get(m, [])
        row_dims = [d for _, _, d in src.offsets.get(m + 2, [])]
        col_dims = [d for _, _, d in src_table]
        for j, (f, _, _) in enumerate(src_table):
            if f in dst_table:
                blocks[(dst_table[f], j)] = self.faces[f].lefschetz_matrix(m)
        if not row_dims or not col_dims:
            return RatMatrix.zeros(dst_dim, self.level_dim(k, m))
        return assemble_blocks(row_dims, col_dims, blocks)

    def lefschetz_power(self, k: int, m: int, power: int) -> RatMatrix:
        out = RatMatrix.identity(self.level_dim(k, m))
        deg = m
        for _ in range(power):
            out = self.level_lefschetz(k, deg) @ out
            deg += 2
        return out

    def restriction_matrix(self, src: Face, dst: Face, m: int) -> RatMatrix:
        d_src = self.faces[src].dim_in(m)
        d_dst = self.faces[dst].dim_in(m)
        if d_src == 0 or d_dst == 0:
            return RatMatrix.zeros(d_dst, d_src)
        maps = self.restrictions.get((src, dst))
        if maps is None or m not in maps:
            raise MissingRestriction(
                f"restriction {_face_str(src)} -> {_face_str(dst)} in degree {m} is absent"
            )
        return maps[m]

    def rho(self, k: int, m: int) -> RatMatrix:
        """Signed restriction map H^m(level k) -> H^m(level k+1)."""
        src_table = self.level(k).offsets.get(m, []) if 1 <= k <= self.max_level else []
        dst_table = (
            self.level(k + 1).offsets.get(m, []) if k + 1 <= self.max_level else []
        )
        col_dims = [d for _, _, d in src_table]
        row_dims = [d for _, _, d in dst_table]
        src_index = {f: j for j, (f, _, _) in enumerate(src_table)}
        blocks = {}
        for i, (J, _, _) in enumerate(dst_table):
            for a in range(len(J)):
                I = J[:a] + J[a + 1 :]
                if I in src_index:
                    sign = -1 if a % 2 else 1
                    blocks[(i, src_index[I])] = self.restriction_matrix(I, J, m).scale(sign)
        if not row_dims or not col_dims:
            return RatMatrix.zeros(sum(row_dims), sum(col_dims))
        return assemble_blocks(row_dims, col_dims, blocks)

    def tau(self, k: int, m: int) -> RatMatrix:
        """Gysin map H^m(level k) -> H^{m+2}(level k-1), adjoint of ``rho``.

        Determined by ``<tau x, y>_{k-1} = <x, rho y>_k`` where y runs over
        the degree complementary to ``m`` on level ``k``; requires perfect
        pairings on level ``k-1``.
        """
        key = (k, m)
        if key in self._tau_cache:
            return self._tau_cache[key]
        cols = self.level_dim(k, m)
        rows = self.level_dim(k - 1, m + 2) if k >= 2 else 0
        if rows == 0 or cols == 0:
            t = RatMatrix.zeros(rows, cols)
        else:
            mc = 2 * (self.n + 1 - k) - m
            a = self.rho(k - 1, mc)
            p1 = self.level_pairing(k, m)
            p0 = self.level_pairing(k - 1, m + 2)
            t = (p1 @ a @ p0.inverse()).transpose()
        self._tau_cache[key] = t
        return t

    # -- validation ----------------------------------------------------------

    def validate(self) -> ValidationReport:
        v: list[Violation] = []
        self._check_nerve(v)
        self._check_strata(v)
        self._check_restrictions(v)
        # relation checks need well-shaped, perfect pairings and complete
        # restriction data; structural violations make them meaningless
        if not v:
            self._check_relations(v)
        return ValidationReport(v)

    def _check_nerve(self, v):
        if self.n < 0:
            v.append(Violation("dimension", "complex", "dimension must be >= 0"))
        s = len(self.components)
        for f in sorted(self.faces):
            if f[-1] > s:
                v.append(
                    Violation("face-index", _face_str(f), f"index exceeds component count {s}")
                )
            if len(f) > self.n + 1:
                v.append(
                    Violation(
                        "face-dim",
                        _face_str(f),
                        f"a {len(f)}-fold intersection is empty in dimension {self.n}",
                    )
                )
            for a in range(len(f)):
                sub = f[:a] + f[a + 1 :]
                if sub and sub not in self.faces:
                    v.append(
                        Violation(
                            "nerve-not-closed",
                            _face_str(f),
                            f"subface {_face_str(sub)} is missing",
                        )
                    )

    def _check_strata(self, v):
        for f in sorted(self.faces):
            coh = self.faces[f]
            d = self.face_dim(f)
            loc = f"face {_face_str(f)}"
            if coh.dim != d:
                v.append(
                    Violation(
                        "face-dim",
                        loc,
                        f"stratum carries dim {coh.dim}, nerve forces {d}",
                    )
                )
                continue
            for m in coh.degrees():
                if m < 0 or m > 2 * d:
                    v.append(Violation("face-degrees", loc, f"degree {m} outside [0, {2*d}]"))
            if coh.slope_pure and any(m % 2 for m in coh.degrees()):
                v.append(
                    Violation("slope-pure-odd", loc, "slope_pure stratum has odd cohomology")
                )
            for m in coh.degrees():
                mc = 2 * d - m
                if coh.dim_in(mc) != coh.dim_in(m):
                    v.append(
                        Violation(
                            "pairing-not-perfect",
                            loc,
                            f"dim H^{m} = {coh.dim_in(m)} != dim H^{mc} = {coh.dim_in(mc)}",
                        )
                    )
                    continue
                p = coh.pairing.get(m)
                if p is None:
                    v.append(Violation("pairing-shape", loc, f"pairing missing in degree {m}"))
                    continue
                if p.rows != coh.dim_in(m) or p.cols != coh.dim_in(mc):
                    v.append(Violation("pairing-shape", loc, f"pairing shape wrong in degree {m}"))
                    continue
                if p.rank() != p.rows:
                    ker = p.transpose().kernel_basis()
                    wit = None
                    if ker.cols:
                        wit = {"kernel_vector": [format_rat(x) for x in ker.col(0)]}
                    v.append(
                        Violation(
                            "pairing-not-perfect",
                            loc,
                            f"pairing not perfect at degree {m}",
                            witness=wit,
                        )
                    )
                sign = -1 if m % 2 else 1
                q = coh.pairing.get(mc)
                if q is not None and q != p.transpose().scale(sign):
                    v.append(
                        Violation(
                            "pairing-symmetry",
                            loc,
                            f"pairings at degrees {m},{mc} violate graded symmetry",
                        )
                    )
            for m, L in sorted(coh.lefschetz.items()):
                if L.rows != coh.dim_in(m + 2) or L.cols != coh.dim_in(m):
                    v.append(Violation("lefschetz-shape", loc, f"lefschetz shape wrong at degree {m}"))
            # self-adjointness <Lx, y> = <x, Ly>
            for m in coh.degrees():
                y_deg = 2 * d - m - 2
                if coh.dim_in(m + 2) and coh.dim_in(y_deg):
                    lhs = coh.lefschetz_matrix(m).transpose() @ coh.pairing.get(
                        m + 2, RatMatrix.zeros(coh.dim_in(m + 2), coh.dim_in(y_deg))
                    )
                    rhs = coh.pairing.get(
                        m, RatMatrix.zeros(coh.dim_in(m), coh.dim_in(2 * d - m))
                    ) @ coh.lefschetz_matrix(y_deg)
                    if lhs != rhs:
                        v.append(
                            Violation(
                                "lefschetz-adjoint",
                                loc,
                                f"<Lx,y> != <x,Ly> between degrees {m} and {y_deg}",
                            )
                        )

    def _check_restrictions(self, v):
        for f in sorted(self.faces):
            if len(f) < 2:
                continue
            for a in range(len(f)):
                sub = f[:a] + f[a + 1 :]
                if sub not in self.faces:
                    continue
                loc = f"restriction {_face_str(sub)} -> {_face_str(f)}"
                src, dst = self.faces[sub], self.faces[f]
                maps = self.restrictions.get((sub, f), {})
                for m in src.degrees():
                    if dst.dim_in(m) == 0:
                        continue
                    r = maps.get(m)
                    if r is None:
                        v.append(
                            Violation("missing-restriction", loc, f"no matrix in degree {m}")
                        )
                        continue
                    if r.rows != dst.dim_in(m) or r.cols != src.dim_in(m):
                        v.append(Violation("restriction-shape", loc, f"bad shape in degree {m}"))
                        continue
                    # commute with lefschetz where the target degree survives
                    if dst.dim_in(m + 2):
                        left = dst.lefschetz_matrix(m) @ r
                        right_r = maps.get(m + 2)
                        if src.dim_in(m + 2) == 0:
                            right = RatMatrix.zeros(dst.dim_in(m + 2), src.dim_in(m))
                        elif right_r is None:
                            v.append(
                                Violation(
                                    "missing-restriction", loc, f"no matrix in degree {m+2}"
                                )
                            )
                            continue
                        else:
                            right = right_r @ src.lefschetz_matrix(m)
                        if left != right:
                            v.append(
                                Violation(
                                    "restriction-lefschetz",
                                    loc,
                                    f"restriction does not commute with lefschetz at degree {m}",
                                )
                            )

    def _check_relations(self, v):
        degrees = sorted({m for f in self.faces for m in self.faces[f].degrees()})
        top = self.max_level
        try:
            for k in range(1, top + 1):
                for m in degrees:
                    if self.level_dim(k, m) == 0:
                        continue
                    loc = f"level {k} degree {m}"
                    rr = self.rho(k + 1, m) @ self.rho(k, m)
                    if not rr.is_zero():
                        v.append(Violation("rho-squared", loc, "rho o rho != 0"))
                    tt = self.tau(k - 1, m + 2) @ self.tau(k, m) if k >= 2 else None
                    if tt is not None and not tt.is_zero():
                        v.append(Violation("tau-squared", loc, "tau o tau != 0"))
                    if k >= 2:
                        mixed = self.rho(k - 1, m + 2) @ self.tau(k, m) + self.tau(
                            k + 1, m
                        ) @ self.rho(k, m)
                        if not mixed.is_zero():
                            v.append(
                                Violation(
                                    "anticommutation",
                                    loc,
                                    "rho tau + tau rho != 0",
                                )
                            )
                    # lefschetz commutes with rho and tau
                    lr = self.level_lefschetz(k + 1, m) @ self.rho(k, m) - self.rho(
                        k, m + 2
                    ) @ self.level_lefschetz(k, m)
                    if not lr.is_zero():
                        v.append(Violation("lefschetz-rho", loc, "[L, rho] != 0"))
                    if k >= 2:
                        lt = self.level_lefschetz(k - 1, m + 2) @ self.tau(k, m) - self.tau(
                            k, m + 2
                        ) @ self.level_lefschetz(k, m)
                        if not lt.is_zero():
                            v.append(Violation("lefschetz-tau", loc, "[L, tau] != 0"))
        except MissingRestriction as exc:
            v.append(Violation("missing-restriction", "relations", str(exc)))

    # -- products ------------------------------------------------------------

    def product_with_factor(self, factor: StratumCohomology) -> "StrataComplex":
        """Tensor every stratum with a fixed smooth factor (Kunneth).

        Pairings acquire the Koszul sign ``(-1)^{|u||y|}``; the ample class of
        the product is ``L (x) 1 + 1 (x) L_f``, restrictions act as ``r (x) 1``.
        """
        for m in factor.degrees():
            mc = 2 * factor.dim - m
            p = factor.pairing.get(m)
            if (
                factor.dim_in(mc) != factor.dim_in(m)
                or p is None
                or p.rank() != factor.dim_in(m)
            ):
                raise InvalidParameters("product factor must have perfect pairings")
        factor_pure = all(m % 2 == 0 for m in factor.degrees())

        def tensor_dims(coh: StratumCohomology):
            dims: dict[int, int] = {}
            for m1 in coh.degrees():
                for m2 in factor.degrees():
                    dims[m1 + m2] = dims.get(m1 + m2, 0) + coh.dim_in(m1) * factor.dim_in(m2)
            return dims

        def blocks_of(m: int, coh: StratumCohomology):
            """Ordered (m1, m2) summands of total degree m."""
            return [
                (m1, m - m1)
                for m1 in coh.degrees()
                if factor.dim_in(m - m1)
            ]

        def tensor_stratum(coh: StratumCohomology) -> StratumCohomology:
            d = coh.dim + factor.dim
            dims = tensor_dims(coh)
            pairing = {}
            lefschetz = {}
            for m in sorted(dims):
                src_blocks = blocks_of(m, coh)
                mc = 2 * d - m
                dst_blocks = blocks_of(mc, coh)
                dst_pos = {b: i for i, b in enumerate(dst_blocks)}
                row_dims = [coh.dim_in(a) * factor.dim_in(b) for a, b in src_blocks]
                col_dims = [coh.dim_in(a) * factor.dim_in(b) for a, b in dst_blocks]
                pb = {}
                for i, (m1, m2) in enumerate(src_blocks):
                    m1c, m2c = 2 * coh.dim - m1, 2 * factor.dim - m2
                    j = dst_pos.get((m1c, m2c))
                    if j is None or m1 not in coh.pairing:
                        continue
                    sign = -1 if (m2 % 2) and (m1c % 2) else 1
                    pb[(i, j)] = kron(coh.pairing[m1], factor.pairing[m2]).scale(sign)
                if row_dims and col_dims:
                    pairing[m] = assemble_blocks(row_dims, col_dims, pb)
                # lefschetz: L (x) 1 + 1 (x) L_f into degree m + 2
                up_blocks = blocks_of(m + 2, coh)
                if up_blocks:
                    up_pos = {b: i for i, b in enumerate(up_blocks)}
                    urow = [coh.dim_in(a) * factor.dim_in(b) for a, b in up_blocks]
                    lb = {}
                    for j, (m1, m2) in enumerate(src_blocks):
                        tgt = up_pos.get((m1 + 2, m2))
                        if tgt is not None:
                            lb[(tgt, j)] = _add_block(
                                lb.get((tgt, j)),
                                kron(
                                    coh.lefschetz_matrix(m1),
                                    RatMatrix.identity(factor.dim_in(m2)),
                                ),
                            )
                        tgt = up_pos.get((m1, m2 + 2))
                        if tgt is not None:
                            lb[(tgt, j)] = _add_block(
                                lb.get((tgt, j)),
                                kron(
                                    RatMatrix.identity(coh.dim_in(m1)),
                                    factor.lefschetz_matrix(m2),
                                ),
                            )
                    if urow and row_dims and lb:
                        lefschetz[m] = assemble_blocks(urow, row_dims, lb)
            return StratumCohomology(
                dim=d,
                dims=dims,
                pairing=pairing,
                lefschetz=lefschetz,
                slope_pure=coh.slope_pure and factor_pure,
            )

        new_faces = {f: tensor_stratum(coh) for f, coh in self.faces.items()}
        new_restrictions = {}
        for (a, b) in self.restrictions:
            src, dst = self.faces[a], self.faces[b]
            out = {}
            degrees = sorted(
                {
                    m1 + m2
                    for m1 in src.degrees()
                    for m2 in factor.degrees()
                    if dst.dim_in(m1)
                }
            )
            for m in degrees:
                src_blocks = blocks_of(m, src)
                dst_blocks = blocks_of(m, dst)
                dst_pos = {blk: i for i, blk in enumerate(dst_blocks)}
                row_dims = [dst.dim_in(x) * factor.dim_in(y) for x, y in dst_blocks]
                col_dims = [src.dim_in(x) * factor.dim_in(y) for x, y in src_blocks]
                rb = {}
                for j, (m1, m2) in enumerate(src_blocks):
                    i = dst_pos.get((m1, m2))
                    if i is None or dst.dim_in(m1) == 0:
                        continue
                    rb[(i, j)] = kron(
                        self.restriction_matrix(a, b, m1),
                        RatMatrix.identity(factor.dim_in(m2)),
                    )
                if row_dims and col_dims:
                    out[m] = assemble_blocks(row_dims, col_dims, rb)
            new_restrictions[(a, b)] = out
        return StrataComplex(
            name=f"{self.name} x factor",
            n=self.n + factor.dim,
            components=self.components,
            faces=new_faces,
            restrictions=new_restrictions,
        )

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        faces = []
        for f in sorted(self.faces):
            coh = self.faces[f]
            entry = {
                "indices": list(f),
                "cohomology": {str(m): coh.dim_in(m) for m in coh.degrees()},
                "pairing": {
                    str(m): _matrix_json(coh.pairing[m])
                    for m in sorted(coh.pairing)
                    if coh.dim_in(m)
                },
                "lefschetz": {
                    str(m): _matrix_json(L) for m, L in sorted(coh.lefschetz.items())
                },
                "slope_pure": coh.slope_pure,
            }
            if coh.labels:
                entry["labels"] = {
                    str(m): list(names) for m, names in sorted(coh.labels.items())
                }
            faces.append(entry)
        restrictions = []
        for (a, b) in sorted(self.restrictions):
            maps = self.restrictions[(a, b)]
            restrictions.append(
                {
                    "from": list(a),
                    "to": list(b),
                    "maps": {str(m): _matrix_json(mat) for m, mat in sorted(maps.items())},
                }
            )
        return {
            "schema_version": 1,
            "name": self.name,
            "dimension": self.n,
            "components": list(self.components),
            "faces": faces,
            "restrictions": restrictions,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @staticmethod
    def from_json_dict(doc: dict) -> "StrataComplex":
        try:
            n = int(doc["dimension"])
            components = [str(c) for c in doc["components"]]
            faces = {}
            for fd in doc["faces"]:
                f = _face(fd["indices"])
                dims = {int(m): int(d) for m, d in fd["cohomology"].items()}
                pairing = {
                    int(m): _matrix_load(mat) for m, mat in fd.get("pairing", {}).items()
                }
                lefschetz = {
                    int(m): _matrix_load(mat) for m, mat in fd.get("lefschetz", {}).items()
                }
                faces[f] = StratumCohomology(
                    dim=n + 1 - len(f),
                    dims=dims,
                    pairing=pairing,
                    lefschetz=lefschetz,
                    slope_pure=bool(fd.get("slope_pure", False)),
                    labels={
                        int(m): [str(x) for x in names]
                        for m, names in fd.get("labels", {}).items()
                    },
                )
            restrictions = {}
            for rd in doc.get("restrictions", []):
                key = (_face(rd["from"]), _face(rd["to"]))
                restrictions[key] = {
                    int(m): _matrix_load(mat) for m, mat in rd.get("maps", {}).items()
                }
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed strata document: {exc}") from exc
        return StrataComplex(
            name=doc.get("name", "unnamed"),
            n=n,
            components=components,
            faces=faces,
            restrictions=restrictions,
        )

    @staticmethod
    def loads(text: str) -> "StrataComplex":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"input is not JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise SchemaError("top-level JSON value must be an object")
        return StrataComplex.from_json_dict(doc)


def _add_block(existing, new):
    return new if existing is None else existing + new


def _matrix_json(m: RatMatrix):
    return [[format_rat(x) for x in row] for row in m.entries]


def _matrix_load(rows) -> RatMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise SchemaError("matrix must be a list of rows")
    parsed = [[rat(x) for x in row] for row in rows]
    ncols = len(parsed[0]) if parsed else 0
    return RatMatrix(len(parsed), ncols, parsed)
