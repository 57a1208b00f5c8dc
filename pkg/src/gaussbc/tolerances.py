"""Numerical tolerances shared across the package.

Defaults can be overridden process-wide with the ``GBC_DEFAULT_TOL``
environment variable, either as a single float (applied to ``eig``) or as a
comma separated ``key=value`` list, e.g. ``GBC_DEFAULT_TOL="eig=1e-6,dec=1e-7"``.
Scoped overrides use :func:`using`.
"""

import contextlib
import contextvars
import dataclasses
import os

ENV_VAR = "GBC_DEFAULT_TOL"


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle.

    Attributes:
        sym: symplecticity / symmetry residual (Frobenius norm).
        eig: Heisenberg slack and pure-mode detection ``|nu - 1|``.
        dec: decomposition and contract residuals (relative Frobenius norm).
        match: accepted mismatch between reduced states that should agree.
    """

    sym: float = 1e-10
    eig: float = 1e-7
    dec: float = 1e-8
    match: float = 1e-6


def parse_override(text):
    """Parse the ``GBC_DEFAULT_TOL`` syntax into a dict of field overrides."""
    text = text.strip()
    if not text:
        return {}
    fields = {f.name for f in dataclasses.fields(Tolerances)}
    try:
        return {"eig": float(text)}
    except ValueError:
        pass
    out = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in fields:
            raise ValueError(f"{ENV_VAR}: cannot parse entry {item!r}")
        out[key] = float(value)
    return out


def _initial():
    return Tolerances(**parse_override(os.environ.get(ENV_VAR, "")))


_current = contextvars.ContextVar("gaussbc_tolerances", default=_initial())


def get():
    """Return the active :class:`Tolerances`."""
    return _current.get()


@contextlib.contextmanager
def using(**overrides):
    """Temporarily override tolerance fields (``None`` values are ignored)."""
    overrides = {k: v for k, v in overrides.items() if v is not None}
    token = _current.set(dataclasses.replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
