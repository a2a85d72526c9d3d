"""Exact-rank check suites: hard Lefschetz on the second page, the
weight-monodromy isomorphisms, and the degree-one lemma chain.

Every statement is instantiated as a matrix computation and reported as a
``CheckResult``.  A failing result always carries a witness that certifies
the failure (a kernel vector of a map claimed bijective, a null vector of a
pairing claimed non-degenerate, or the offending dimensions); witnesses are
re-multiplied through before the result is emitted.  Checks on zero spaces
pass with a "vacuous" note, matching mathematical convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidParameters
from .linalg import (
    QuotientSpace,
    RatMatrix,
    Subspace,
    format_rat,
    image,
    induced_map,
    kernel,
)
from .spectral import E2Page, build_e1, compute_e2
from .strata import StrataComplex


@dataclass
class CheckResult:
    name: str
    location: dict = field(default_factory=dict)
    status: str = "pass"  # pass | fail | skipped
    note: str = ""
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "location": self.location,
            "status": self.status,
            "note": self.note,
            "witness": self.witness,
        }

    def __str__(self):
        loc = ",".join(f"{k}={v}" for k, v in sorted(self.location.items()))
        tail = f" ({self.note})" if self.note else ""
        return f"{self.status.upper():7s} {self.name}[{loc}]{tail}"


def _vector_json(vec):
    return [format_rat(x) for x in vec]


def bijectivity_check(name: str, location: dict, matrix: RatMatrix) -> CheckResult:
    """Pass iff the matrix is square of full rank; witnesses verified."""
    src, dst = matrix.cols, matrix.rows
    if src == 0 and dst == 0:
        return CheckResult(name, location, "pass", note="vacuous (zero spaces)")
    if src != dst:
        return CheckResult(
            name,
            location,
            "fail",
            note="source and target dimensions differ",
            witness={"source_dim": src, "target_dim": dst},
        )
    r = matrix.rank()
    if r == src:
        return CheckResult(name, location, "pass", witness={"dim": src, "rank": r})
    ker = matrix.kernel_basis()
    v = ker.col(0)
    assert any(x != 0 for x in v) and all(x == 0 for x in matrix.apply(v))
    return CheckResult(
        name,
        location,
        "fail",
        note="map is not injective",
        witness={
            "dim": src,
            "rank": r,
            "kernel_vector": _vector_json(v),
            "witness_verified": True,
        },
    )


def injectivity_check(name: str, location: dict, matrix: RatMatrix) -> CheckResult:
    if matrix.cols == 0:
        return CheckResult(name, location, "pass", note="vacuous (zero source)")
    r = matrix.rank()
    if r == matrix.cols:
        return CheckResult(name, location, "pass", witness={"rank": r})
    v = matrix.kernel_basis().col(0)
    assert all(x == 0 for x in matrix.apply(v))
    return CheckResult(
        name,
        location,
        "fail",
        note="map is not injective",
        witness={"rank": r, "kernel_vector": _vector_json(v), "witness_verified": True},
    )


def nondegeneracy_check(name: str, location: dict, gram: RatMatrix) -> CheckResult:
    """Pass iff the (square) Gram matrix of a restricted pairing is invertible."""
    if gram.rows == 0:
        return CheckResult(name, location, "pass", note="vacuous (zero space)")
    if gram.rows != gram.cols:
        return CheckResult(
            name,
            location,
            "fail",
            note="pairing is not between spaces of equal dimension",
            witness={"rows": gram.rows, "cols": gram.cols},
        )
    r = gram.rank()
    if r == gram.rows:
        return CheckResult(name, location, "pass", witness={"dim": gram.rows})
    v = gram.kernel_basis().col(0)
    assert all(x == 0 for x in gram.apply(v))
    return CheckResult(
        name,
        location,
        "fail",
        note="restricted pairing is degenerate",
        witness={
            "dim": gram.rows,
            "rank": r,
            "null_vector": _vector_json(v),
            "witness_verified": True,
        },
    )


# -- log hard Lefschetz and weight-monodromy on the second page ---------------


def check_log_hl(e2: E2Page, r: int) -> list[CheckResult]:
    """L^r between the cells of total degree n-r and n+r, one result per b.

    Also cross-asserts, independently of any rank computation, that each
    source cell has the dimension of its dual corner (the Lefschetz target
    cell of weight 2n-b), which duality alone forces.
    """
    if r < 0:
        raise InvalidParameters("r must be >= 0")
    n = e2.n
    bs = sorted(
        {b for (a, b) in e2.support() if a + b == n - r}
        | {b - 2 * r for (a, b) in e2.support() if a + b == n + r}
    )
    results = []
    for b in bs:
        a = n - r - b
        matrix = e2.induced_l_power(a, b, r)
        results.append(
            bijectivity_check(
                "log_hard_lefschetz",
                {"r": r, "b": b, "q": n - r},
                matrix,
            )
        )
        # duality pairs this source cell with the Lefschetz target cell of
        # weight 2n-b, the four-corner square; forced by duality alone
        d_src = e2.dim(a, b)
        d_dual = e2.dim(b + r - n, 2 * n - b)
        results.append(
            CheckResult(
                "log_hl_corner_dims",
                {"r": r, "b": b},
                "pass" if d_src == d_dual else "fail",
                witness={"dim": d_src, "dual_corner_dim": d_dual},
            )
        )
    if not bs:
        results.append(
            CheckResult("log_hard_lefschetz", {"r": r}, "pass", note="vacuous (no cells)")
        )
    return results


def check_log_hl_all(e2: E2Page) -> list[CheckResult]:
    out = []
    for r in range(e2.n + 1):
        out.extend(check_log_hl(e2, r))
    return out


def check_wm(e2: E2Page) -> list[CheckResult]:
    """N^r: E2^{-r, w+r} -> E2^{r, w-r} for every (r, w) meeting the support."""
    pairs = sorted(
        {(abs(a), a + b) for (a, b) in e2.support() if a != 0}
    )
    results = []
    for r, w in pairs:
        matrix = e2.induced_n_power(-r, w + r, r)
        results.append(
            bijectivity_check("weight_monodromy", {"r": r, "w": w}, matrix)
        )
    if not pairs:
        results.append(
            CheckResult(
                "weight_monodromy",
                {},
                "pass",
                note="vacuous (single-column page, N = 0)",
            )
        )
    return results


# -- the degree-one suite ------------------------------------------------------


def _twisted_gram(sc: StrataComplex, k: int, q: int) -> RatMatrix | None:
    """Gram of <x, y> = pairing(L^{n+1-k-q} x, y) on H^q(level k)."""
    p = sc.n + 1 - k - q
    if p < 0:
        return None
    lpow = sc.lefschetz_power(k, q, p)
    top = sc.level_pairing(k, q + 2 * p)
    return lpow.transpose() @ top


def _restricted_gram(gram: RatMatrix, basis: RatMatrix) -> RatMatrix:
    return basis.transpose() @ gram @ basis


def check_h1_suite(sc: StrataComplex) -> list[CheckResult]:
    """Degree-one lemma chain: pairing lemmas, the weight-monodromy
    isomorphism on weight-two classes, and the three Lefschetz-power maps
    between the corner cells of the second page."""
    n = sc.n
    if n < 1:
        raise InvalidParameters("degree-one suite needs dimension >= 1")
    results: list[CheckResult] = []

    # pairing on im(rho) and ker(rho) inside H^0 of every level
    for k in range(1, sc.max_level + 1):
        if sc.level_dim(k, 0) == 0:
            continue
        gram = _twisted_gram(sc, k, 0)
        if k >= 2:
            im_rho = image(sc.rho(k - 1, 0))
            results.append(
                nondegeneracy_check(
                    "h0_pairing_on_im_rho",
                    {"k": k},
                    _restricted_gram(gram, im_rho.basis),
                )
            )
        ker_rho = kernel(sc.rho(k, 0))
        results.append(
            nondegeneracy_check(
                "h0_pairing_on_ker_rho",
                {"k": k},
                _restricted_gram(gram, ker_rho.basis),
            )
        )

    # pairing on im(tau) ∩ primitive H^2 of the component level
    tau20 = sc.tau(2, 0)
    rho10 = sc.rho(1, 0)
    im_tau = image(tau20)
    primitive = kernel(sc.lefschetz_power(1, 2, n - 1))
    meet = im_tau.intersection(primitive)
    if meet.dim == 0:
        results.append(
            CheckResult(
                "pairing_on_im_tau_primitive",
                {"k": 1, "q": 2},
                "pass",
                note="vacuous (intersection is zero)",
            )
        )
    else:
        gram2 = _twisted_gram(sc, 1, 2)
        results.append(
            nondegeneracy_check(
                "pairing_on_im_tau_primitive",
                {"k": 1, "q": 2},
                _restricted_gram(gram2, meet.basis),
            )
        )

    # im(tau rho) is the orthocomplement of im(tau) ∩ P^2 inside im(tau)
    im_tau_rho = image(tau20 @ rho10)
    if meet.dim == 0:
        complement = im_tau
    else:
        gram2 = _twisted_gram(sc, 1, 2)
        conditions = meet.basis.transpose() @ gram2 @ im_tau.basis
        coeffs = conditions.kernel_basis()
        complement = Subspace.spanned_by(im_tau.ambient_dim, im_tau.basis @ coeffs)
    results.append(_subspace_equality_check(
        "im_tau_rho_is_orthocomplement", {"k": 1, "q": 2}, im_tau_rho, complement
    ))

    # ker(tau) ∩ im(rho) = 0 in H^0 of the double level
    meet2 = kernel(tau20).intersection(image(rho10))
    if meet2.dim == 0:
        results.append(
            CheckResult("ker_tau_meets_im_rho_trivially", {"k": 2, "q": 0}, "pass")
        )
    else:
        v = meet2.basis.col(0)
        results.append(
            CheckResult(
                "ker_tau_meets_im_rho_trivially",
                {"k": 2, "q": 0},
                "fail",
                note="intersection is nonzero",
                witness={"dim": meet2.dim, "vector": _vector_json(v)},
            )
        )

    # ker(rho) ∩ im(tau) = im(tau rho) in H^2 of the component level
    meet3 = kernel(sc.rho(1, 2)).intersection(im_tau)
    results.append(_subspace_equality_check(
        "ker_rho_meets_im_tau_in_im_tau_rho", {"k": 1, "q": 2}, meet3, im_tau_rho
    ))

    # weight-monodromy on weight-two degree-one classes: the identity of
    # H^0(level 2) induces ker(tau)∩ker(rho) ~ ker(rho)/im(rho)
    amb = sc.level_dim(2, 0)
    rho20 = sc.rho(2, 0)
    source = QuotientSpace(
        amb,
        kernel(tau20).intersection(kernel(rho20)),
        Subspace.zero(amb),
    )
    target = QuotientSpace(amb, kernel(rho20), image(rho10))
    results.append(
        bijectivity_check(
            "wm_h1_iso",
            {"r": 1, "w": 1},
            induced_map(RatMatrix.identity(amb), source, target),
        )
    )

    # the three Lefschetz-power maps between degree-one and degree-(2n-1) cells
    e2 = compute_e2(build_e1(sc))
    ell = [
        ("log_hl_h1_ell0", 1, 0),
        ("log_hl_h1_ell1", 0, 1),
        ("log_hl_h1_ell2", -1, 2),
    ]
    for name, a, b in ell:
        matrix = e2.induced_l_power(a, b, n - 1)
        if name == "log_hl_h1_ell2":
            results.append(
                injectivity_check("log_hl_h1_ell2_injective", {"a": a, "b": b}, matrix)
            )
        results.append(bijectivity_check(name, {"a": a, "b": b}, matrix))

    # four-corner consistency: both weight-monodromy sides of degree one have
    # the dimensions forced by duality once ell0 is an isomorphism
    dims = {
        "E2(1,0)": e2.dim(1, 0),
        "E2(-1,2)": e2.dim(-1, 2),
        f"E2(1,{2*n-2})": e2.dim(1, 2 * n - 2),
        f"E2(-1,{2*n})": e2.dim(-1, 2 * n),
    }
    distinct = set(dims.values())
    results.append(
        CheckResult(
            "wm_h1_four_corner_dims",
            {},
            "pass" if len(distinct) == 1 else "fail",
            witness=dims,
        )
    )
    return results


def _subspace_equality_check(name, location, left: Subspace, right: Subspace) -> CheckResult:
    if left.dim == right.dim and right.contains(left):
        note = "vacuous (both zero)" if left.dim == 0 else ""
        return CheckResult(name, location, "pass", note=note, witness={"dim": left.dim})
    witness = {"left_dim": left.dim, "right_dim": right.dim}
    for j in range(left.basis.cols):
        v = left.basis.col(j)
        if not right.contains_vector(v):
            witness["vector_in_left_only"] = _vector_json(v)
            break
    else:
        for j in range(right.basis.cols):
            v = right.basis.col(j)
            if not left.contains_vector(v):
                witness["vector_in_right_only"] = _vector_json(v)
                break
    return CheckResult(name, location, "fail", note="subspaces differ", witness=witness)
