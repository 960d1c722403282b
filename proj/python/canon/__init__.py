"""Canonical forms of positive definite matrices under congruence.

Thin wrappers over the compiled ``canon._core`` module. Every function takes
NumPy arrays and picks the real or complex implementation from the dtype.
Errors raise :class:`CanonError`, whose ``code`` attribute holds the stable
error code (``"NotPositiveDefinite"``, ``"DependentVectors"``, ...).
"""

import numpy as np

from . import _core
from ._core import CanonError, antisym_canonical, unboundedness_demo

__all__ = [
    "CanonError",
    "antisym_canonical",
    "basis",
    "check_spd",
    "eig_hermitian",
    "extremum_audit",
    "group_check",
    "invariant_trace",
    "odd_norm",
    "orthogonal_congruence",
    "pseudo_congruence",
    "quartic_form",
    "sample_group_element",
    "unboundedness_demo",
    "williamson",
]


def _dispatch(name, a):
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return getattr(_core, name + "_complex"), np.asarray(a, dtype=np.complex128)
    return getattr(_core, name + "_real"), np.asarray(a, dtype=np.float64)


def _form(form):
    """("metric", m, n) or ("symplectic", n)."""
    kind, *counts = form
    if kind == "symplectic":
        return kind, counts[0], 0
    return kind, counts[0], counts[1]


def eig_hermitian(a):
    """Ascending eigenvalues and orthonormal eigenvectors (as columns)."""
    fn, a = _dispatch("eig_hermitian", a)
    return fn(a)


def check_spd(a):
    fn, a = _dispatch("check_spd", a)
    return fn(a)


def orthogonal_congruence(v):
    fn, v = _dispatch("orthogonal_congruence", v)
    return fn(v)


def pseudo_congruence(v, m, n):
    """S with S^H g S = g and S^H V S = diag(d_squared)."""
    fn, v = _dispatch("pseudo_congruence", v)
    return fn(v, m, n)


def williamson(v):
    """S with S^H beta S = beta and S^H V S = diag(kappa, kappa)."""
    fn, v = _dispatch("williamson", v)
    return fn(v)


def group_check(s, form, tol=1e-8):
    """(pass, form_residual, det) for S against ("metric", m, n) or ("symplectic", n)."""
    fn, s = _dispatch("group_check", s)
    return fn(s, *_form(form), tol)


def sample_group_element(form, kind="general", seed=0, mu_max=2.0, complex=False):
    fn = _core.sample_group_element_complex if complex else _core.sample_group_element_real
    return fn(*_form(form), kind, seed, mu_max)


def invariant_trace(m, form, power):
    fn, m = _dispatch("invariant_trace", m)
    return fn(m, *_form(form), power)


def odd_norm(m, form):
    fn, m = _dispatch("odd_norm", m)
    return fn(m, *_form(form))


def quartic_form(m):
    fn, m = _dispatch("quartic_form", m)
    return fn(m)


def basis(vectors, method, m=0, n=0):
    """Basis from the columns of ``vectors``; method is gs, sw, lorentz or symplectic."""
    fn, vectors = _dispatch("basis", vectors)
    return fn(vectors, method, m, n)


def extremum_audit(vectors, method, m=0, n=0, trials=100, seed=0):
    fn, vectors = _dispatch("extremum_audit", vectors)
    return fn(vectors, method, m, n, trials, seed)
