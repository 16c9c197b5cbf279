"""Precoded layered codes: general (n, k) via a linearized-polynomial outer code.

The complete-design layered code over n nodes only offers reconstruction
degree n - m. To hit smaller k, the F data symbols become the coefficients
of a q-linearized polynomial f(x) = sum v_i x^(q^(i-1)) over GF(q^kappa),
q = 2^w, with kappa = F_c = (r-m) C(n,r) the inner code's data size; the
inner code stores f evaluated at a basis of GF(q^kappa) over GF(q). Every
stored symbol is then itself an evaluation of f at a known point (the
symbol's generator column mapped through the basis), so any symbol set
whose columns have full rank over GF(q) pins f down.

F = rho(n, k, m, r) is the worst-case rank over k-subsets; rank_oracle
recomputes subset ranks by eliminating an explicit generator matrix and
shares no code with rho.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from .designs import complete_design
from .errors import IntegrityError, ValidationError
from .extfield import BinaryExtensionField, extension_field
from .gf import binary_field
from .layered import LayeredCode, NodeContents, SystemParams, build_code
from .mds import mds_codec


def rho(n: int, k: int, m: int, r: int) -> int:
    """Data symbols retained by an (n, k) precoded code with group size r.

    Sums min(p, r-m) over the blocks meeting a fixed k-set in p points:
    rho = sum_p C(k,p) C(n-k,r-p) min(p, r-m). Equals (r-m) C(n,r) when
    m = n-k (the plain layered case).
    """
    _check_shape(n, k, m, r)
    total = 0
    for p in range(max(1, r - (n - k)), min(k, r) + 1):
        total += comb(k, p) * comb(n - k, r - p) * min(p, r - m)
    return total


def _check_shape(n: int, k: int, m: int, r: int) -> None:
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got n={n} k={k}")
    if not 1 <= m <= n - k:
        raise ValidationError(f"need 1 <= m <= n-k, got m={m} n-k={n - k}")
    if not m < r <= n:
        raise ValidationError(f"need m < r <= n, got m={m} r={r} n={n}")


def _subfield_generator_columns(field, r: int, km: int) -> tuple[tuple[int, ...], ...]:
    # column pos of the (r, km) systematic generator, in subfield coordinates
    codec = mds_codec(field, r, km)
    cols = []
    for pos in range(r):
        if pos < km:
            cols.append(tuple(field.one if i == pos else field.zero for i in range(km)))
        else:
            cols.append(tuple(codec._parity[i][pos - km] for i in range(km)))
    return tuple(cols)


def rank_oracle(
    n: int, k: int, m: int, r: int, nodes: Iterable[int], w: Optional[int] = None
) -> int:
    """Rank over GF(2^w) of the generator columns a node subset holds.

    Materializes the inner code's generator (one (r-m)-row segment per
    block) and eliminates the subset's columns. Plain linear algebra on an
    explicit matrix; nothing shared with rho.
    """
    _check_shape(n, k, m, r)
    nodes = sorted(set(nodes))
    if not set(nodes) <= set(range(1, n + 1)):
        raise ValidationError("nodes must lie in 1..n")
    if w is None:
        w = max(2, (r - 1).bit_length())
    field = binary_field(w)
    km = r - m
    gen_cols = _subfield_generator_columns(field, r, km)
    design = complete_design(n, r)
    node_set = set(nodes)
    # sparse elimination; columns of distinct blocks occupy disjoint rows
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for b, block in enumerate(design.blocks):
        base = b * km
        for pos, x in enumerate(block):
            if x not in node_set:
                continue
            vec = {base + i: v for i, v in enumerate(gen_cols[pos]) if v != field.zero}
            while vec:
                lead = min(vec)
                if lead not in pivots:
                    inv = field.inv(vec[lead])
                    pivots[lead] = {row: field.mul(inv, v) for row, v in vec.items()}
                    rank += 1
                    break
                factor = vec[lead]
                for row, v in pivots[lead].items():
                    nv = field.add(vec.get(row, field.zero), field.mul(factor, v))
                    if nv == field.zero:
                        vec.pop(row, None)
                    else:
                        vec[row] = nv
    return rank


def linearized_eval(field: BinaryExtensionField, coeffs: Sequence[int], point: int) -> int:
    """f(point) for f(x) = sum coeffs[i] x^(q^i)."""
    acc = field.zero
    p = point
    for v in coeffs:
        acc = field.add(acc, field.mul(v, p))
        p = field.frobenius(p)
    return acc


def linearized_precode(
    field: BinaryExtensionField, data: Sequence[int], points: Sequence[int]
) -> list[int]:
    """Evaluate the data's linearized polynomial at subfield-independent points."""
    if len(data) > len(points):
        raise ValidationError(f"{len(data)} coefficients but only {len(points)} points")
    if len(points) > field.kappa:
        raise ValidationError(f"at most kappa={field.kappa} independent points exist")
    for v in data:
        if not field.contains(v):
            raise ValidationError(f"{v!r} is not a field element")
    if not field.independent_over_subfield(points):
        raise ValidationError("evaluation points are dependent over the subfield")
    return [linearized_eval(field, data, pt) for pt in points]


@dataclass(frozen=True)
class PrecodedCode:
    n: int
    k: int
    d: int
    e: int
    m: int
    r: int
    field: BinaryExtensionField
    inner: LayeredCode
    gen_cols: tuple[tuple[int, ...], ...]  # generator columns, subfield coords
    data_len: int   # F = rho(n, k, m, r)
    inner_len: int  # F_c = (r-m) C(n,r) = kappa

    @property
    def alpha(self) -> int:
        return self.inner.alpha

    def encode(self, data: Sequence[int]) -> list[NodeContents]:
        """Data -> all n nodes; symbols are extension-field elements."""
        if len(data) != self.data_len:
            raise ValidationError(f"data must have {self.data_len} symbols, got {len(data)}")
        evals = linearized_precode(self.field, data, self.field.theta)
        return self.inner.encode(evals)

    def reconstruct(self, contents: Iterable[NodeContents]) -> list[int]:
        """Recover the data from any >= k distinct nodes' contents.

        Walks the provided symbols in node order, keeps the first F whose
        evaluation points are independent over the subfield, solves their
        Moore system, then checks f against every other provided symbol.
        """
        by_node = self.inner._index_contents(contents)
        if len(by_node) < self.k:
            raise ValidationError(f"need at least k={self.k} distinct nodes, got {len(by_node)}")
        f = self.field
        km = self.r - self.m
        slots: list[tuple[int, int]] = []  # (evaluation point, stored symbol)
        for x, nc in sorted(by_node.items()):
            for (b, pos), (blk_idx, sym) in zip(self.inner._slots[x], nc.symbols):
                if blk_idx != b + 1:
                    raise ValidationError(
                        f"node {x} lists block {blk_idx} where block {b + 1} belongs"
                    )
                nu = f.zero
                for i in range(km):
                    coeff = self.gen_cols[pos][i]
                    if coeff:
                        nu = f.add(nu, f.mul(f.embed(coeff), f.theta[b * km + i]))
                slots.append((nu, sym))
        span = f.span()
        chosen = [i for i, (nu, _) in enumerate(slots) if span.insert(nu)]
        if len(chosen) < self.data_len:
            raise IntegrityError(
                f"only {len(chosen)} independent columns among {len(slots)}; "
                f"need {self.data_len}"
            )
        data = self._solve_moore([slots[i] for i in chosen[: self.data_len]])
        for nu, sym in slots:
            if linearized_eval(f, data, nu) != sym:
                raise IntegrityError("stored symbols are inconsistent with the recovered data")
        return data

    def repair(
        self,
        state: Iterable[NodeContents],
        failed: Iterable[int],
        helpers: Iterable[int],
    ):
        """Group-local repair, exactly the inner layered code's."""
        return self.inner.repair(state, failed, helpers)

    def _solve_moore(self, rows: list[tuple[int, int]]) -> list[int]:
        f = self.field
        size = len(rows)
        aug = []
        for nu, sym in rows:
            row = []
            p = nu
            for _ in range(size):
                row.append(p)
                p = f.frobenius(p)
            row.append(sym)
            aug.append(row)
        for col in range(size):
            piv = next((i for i in range(col, size) if aug[i][col] != 0), None)
            if piv is None:
                raise IntegrityError("Moore system is singular for independent points")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = f.inv(aug[col][col])
            aug[col] = [f.mul(inv, v) for v in aug[col]]
            for i in range(size):
                if i != col and aug[i][col] != 0:
                    factor = aug[i][col]
                    aug[i] = [f.add(v, f.mul(factor, w)) for v, w in zip(aug[i], aug[col])]
        return [aug[i][size] for i in range(size)]


def build_precoded(
    n: int, k: int, d: int, e: int, m: int, r: int, w: Optional[int] = None
) -> PrecodedCode:
    """Assemble an (n, k, d, e) precoded code with group size r over GF(2^w)."""
    _check_shape(n, k, m, r)
    if not 1 <= e <= m:
        raise ValidationError(f"need 1 <= e <= m, got e={e} m={m}")
    if not k <= d <= n - e:
        raise ValidationError(f"need k <= d <= n-e, got k={k} d={d} n-e={n - e}")
    inner_k = n - m
    if inner_k < 2:
        raise ValidationError("m = n-1 collapses the inner code to one node; unsupported")
    if w is None:
        w = max(2, (r - 1).bit_length())
    kappa = (r - m) * comb(n, r)
    field = extension_field(w, kappa)
    inner_params = SystemParams(
        n=n, k=inner_k, d=inner_k, e=min(m, inner_k - 1), m=m, r=r, t=r
    )
    inner = build_code(inner_params, field=field)
    if inner.data_len != kappa:
        raise IntegrityError("inner code size disagrees with kappa")
    gen_cols = _subfield_generator_columns(binary_field(w), r, r - m)
    # the extension codec must be the embedded image of the subfield codec,
    # or stored symbols would not be evaluations at the gen_cols points
    for j in range(m):
        for i in range(r - m):
            if inner.codec._parity[i][j] != field.embed(gen_cols[r - m + j][i]):
                raise IntegrityError("extension codec is not the embedded subfield codec")
    return PrecodedCode(
        n=n, k=k, d=d, e=e, m=m, r=r,
        field=field, inner=inner,
        gen_cols=gen_cols,
        data_len=rho(n, k, m, r), inner_len=kappa,
    )
