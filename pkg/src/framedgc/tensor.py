"""Koszul-signed operations on tensor products of graded vector spaces.

A tensor is a :class:`TensorVector` whose keys are tuples of basis keys, one
per factor.  The callers pass ``deg``, a function giving the degree of a
basis key, so the same code serves graphs, semidirect elements and
cohomology classes.
"""

from __future__ import annotations

from .linalg import TensorVector, Vector

__all__ = ["pure", "tensor_mul", "apply_factor", "transpose_last", "expand_first", "expand_last"]


def pure(shape, keys, coef=1) -> TensorVector:
    return TensorVector(tuple(shape), {tuple(keys): coef})


def tensor_mul(s: TensorVector, t: TensorVector, mul, deg) -> TensorVector:
    """Product in a tensor product of graded algebras.

    ``mul(a, b)`` returns a mapping of basis keys to coefficients for the
    product in one factor; moving the later factors of ``s`` past the
    earlier factors of ``t`` costs ``(-1)**(|x| * |y|)`` per crossing.
    """
    if s.shape != t.shape:
        raise ValueError(f"tensor shapes {s.shape} vs {t.shape}")
    out = TensorVector(s.shape)
    for ks, cs in s.terms.items():
        ds = [deg(k) for k in ks]
        for kt, ct in t.terms.items():
            dt = [deg(k) for k in kt]
            sign = 0
            for a in range(len(ks)):
                for b in range(a):
                    sign += ds[a] * dt[b]
            partial = [((), -cs * ct if sign & 1 else cs * ct)]
            for x, y in zip(ks, kt):
                prod = mul(x, y)
                partial = [(key + (z,), c * cz)
                           for key, c in partial for z, cz in prod.items()]
                if not partial:
                    break
            for key, c in partial:
                out.add_term(key, c)
    return out


def _terms(v):
    return v.terms if isinstance(v, Vector) else v


def apply_factor(t: TensorVector, r: int, f, shape, deg, op_degree=0) -> TensorVector:
    """Apply the linear map ``f`` to factor ``r`` (Koszul rule).

    ``f(key)`` returns a mapping (or Vector) of keys to coefficients.  The
    result has shape ``shape``.  When ``f`` has odd degree, passing it over
    the factors before ``r`` contributes their total degree to the sign.
    """
    out = TensorVector(tuple(shape))
    for key, c in t.terms.items():
        if op_degree % 2 and sum(deg(k) for k in key[:r]) % 2:
            c = -c
        for z, cz in _terms(f(key[r])).items():
            out.add_term(key[:r] + (z,) + key[r + 1:], c * cz)
    return out


def expand_first(t: TensorVector, f, shape) -> TensorVector:
    """Replace the first factor by a tensor: ``f(key)`` returns a TensorVector.

    Used for ``(co (x) id)``; ``f`` has degree zero so no sign arises.
    """
    out = TensorVector(tuple(shape))
    for key, c in t.terms.items():
        for z, cz in f(key[0]).terms.items():
            out.add_term(z + key[1:], c * cz)
    return out


def expand_last(t: TensorVector, f, shape) -> TensorVector:
    out = TensorVector(tuple(shape))
    for key, c in t.terms.items():
        for z, cz in f(key[-1]).terms.items():
            out.add_term(key[:-1] + z, c * cz)
    return out


def transpose_last(t: TensorVector, deg) -> TensorVector:
    """Swap the last two factors with the sign ``(-1)**(|y| |z|)``."""
    shape = t.shape[:-2] + (t.shape[-1], t.shape[-2])
    out = TensorVector(shape)
    for key, c in t.terms.items():
        y, z = key[-2], key[-1]
        out.add_term(key[:-2] + (z, y), -c if deg(y) * deg(z) % 2 else c)
    return out
