from pydantic import BaseModel

from arith.poly import PolyV
from utils.errors import ModuleOverflowError, SizeMismatchError
from weyl.realization import realize


class TruncatedModule:
    """
    V_n = Q[t] (x) Q^n cut at t-degree ``degree_cap``.

    p acts as multiplication by t and q as d/dt; D acts as p.  Vectors are
    tuples of PolyV in t.
    """

    def __init__(self, size, degree_cap=16):
        self.size = size
        self.degree_cap = degree_cap

    def vector(self, *entries):
        if len(entries) != self.size:
            raise SizeMismatchError(f"Q[t]^{self.size}", f"{len(entries)} entries")
        out = tuple(e if isinstance(e, PolyV) else PolyV.constant(e) for e in entries)
        self._check(out)
        return out

    def basis(self, degree, index):
        """t^degree (x) e_index (0-based index)"""
        return self.vector(*[PolyV.monomial(degree) if k == index else PolyV() for k in range(self.size)])

    def _check(self, u):
        for f in u:
            if f.degree > self.degree_cap:
                raise ModuleOverflowError(f"t-degree {f.degree} exceeds the module cap {self.degree_cap}")

    def add(self, u, w):
        return tuple(a + b for a, b in zip(u, w))

    def scale(self, u, c):
        return tuple(a.scale(c) for a in u)

    def shift(self, u):
        """T u = t u"""
        out = tuple(f.shift_degree(1) for f in u)
        self._check(out)
        return out


def act_on_module(w, u, module):
    """Apply an operator of M_n(W) to a vector of the truncated module"""
    if w.size != module.size or len(u) != module.size:
        raise SizeMismatchError(f"M_{w.size}(W)", f"Q[t]^{len(u)}")
    out = [PolyV() for _ in range(module.size)]
    for i, j, x in w.entries():
        f = u[j]
        if not f:
            continue
        for (a, b), c in x.terms.items():
            g = f.deriv(b)
            if not g:
                continue
            if g.degree + a > module.degree_cap:
                raise ModuleOverflowError(
                    f"p^{a} q^{b} on a degree {f.degree} vector leaves the module cap {module.degree_cap}"
                )
            out[i] = out[i] + g.shift_degree(a).scale(c)
    return tuple(out)


class ModuleAxiomCheck(BaseModel):
    n: int
    sesqui_linear: bool
    vanishes_from: int
    local: bool


def check_module_axioms(a, u, n, module):
    """
    a(n) T u = T a(n) u + n a(n-1) u, and a(m) u = 0 for m large.

    ``vanishes_from`` is the first index past which a(m) u is forced to
    vanish: q^(m-s) kills u once m - s exceeds its t-degree.
    """
    lhs = act_on_module(realize(a, n), module.shift(u), module)
    rhs = module.shift(act_on_module(realize(a, n), u, module))
    if n >= 1:
        rhs = module.add(rhs, module.scale(act_on_module(realize(a, n - 1), u, module), n))
    top = max((f.degree for f in u), default=-1)
    vanishes_from = max(top, 0) + max(a.d_degree, 0) + 1
    local = all(not any(act_on_module(realize(a, m), u, module)) for m in range(vanishes_from, vanishes_from + 3))
    return ModuleAxiomCheck(n=n, sesqui_linear=lhs == rhs, vanishes_from=vanishes_from, local=local)
