"""Bridge between core-bound System F terms and the reference representation.

Variable names are qualified with the unique key ("x#12") so distinct
variables stay distinct regardless of display names.  This is the only
oracle module allowed to touch the binding core.
"""

from __future__ import annotations

from typing import Optional

from ..core import Var, bind_var, box, box_var, new_var, name_of, unbind, unbox
from ..systemf import (
    Te,
    TeAbs,
    TeApp,
    TeLam,
    TeSpe,
    TeVar,
    Ty,
    TyAll,
    TyArr,
    TyVar,
    _TeAbs,
    _TeApp,
    _TeLam,
    _TeSpe,
    _TyAll,
    _TyArr,
)
from . import named

__all__ = ["qualified_name", "ty_to_named", "te_to_named", "named_to_ty", "named_to_te"]


def qualified_name(v: Var) -> str:
    return f"{name_of(v)}#{v.key}"


def ty_to_named(a: Ty) -> named.Ty:
    match a:
        case TyVar(x):
            return named.TVar(qualified_name(x))
        case TyArr(d, c):
            return named.TArr(ty_to_named(d), ty_to_named(c))
        case TyAll(f):
            x, body = unbind(f)
            return named.TAll(qualified_name(x), ty_to_named(body))
    raise TypeError(f"not a type: {a!r}")


def te_to_named(t: Te) -> named.Te:
    match t:
        case TeVar(x):
            return named.Var(qualified_name(x))
        case TeAbs(a, f):
            x, body = unbind(f)
            return named.Abs(qualified_name(x), ty_to_named(a), te_to_named(body))
        case TeApp(fn, arg):
            return named.App(te_to_named(fn), te_to_named(arg))
        case TeLam(f):
            x, body = unbind(f)
            return named.Lam(qualified_name(x), te_to_named(body))
        case TeSpe(fn, a):
            return named.Spe(te_to_named(fn), ty_to_named(a))
    raise TypeError(f"not a term: {t!r}")


def _display(name: str) -> str:
    return name.split("#", 1)[0] if "#" in name else name


def named_to_ty(a: named.Ty, free_ty: Optional[dict[str, Var]] = None) -> Ty:
    """Rebuild a core type from a named one.

    `free_ty` maps free names to existing variables; unmapped free names
    get one fresh variable per distinct name.
    """
    free = dict(free_ty or {})
    return unbox(_go_ty(a, {}, free))


def named_to_te(
    t: named.Te,
    free_te: Optional[dict[str, Var]] = None,
    free_ty: Optional[dict[str, Var]] = None,
) -> Te:
    """Rebuild a core term from a named one (see `named_to_ty`)."""
    fte = dict(free_te or {})
    fty = dict(free_ty or {})
    return unbox(_go_te(t, {}, {}, fte, fty))


def _go_ty(a: named.Ty, tyscope: dict, free_ty: dict):
    match a:
        case named.TVar(n):
            v = tyscope.get(n) or free_ty.get(n)
            if v is None:
                v = free_ty[n] = new_var(TyVar, _display(n))
            return box_var(v)
        case named.TArr(d, c):
            return _TyArr(_go_ty(d, tyscope, free_ty), _go_ty(c, tyscope, free_ty))
        case named.TAll(x, b):
            v = new_var(TyVar, _display(x))
            return _TyAll(bind_var(v, _go_ty(b, {**tyscope, x: v}, free_ty)))
    raise TypeError(f"not a type: {a!r}")


def _go_te(t: named.Te, tescope: dict, tyscope: dict, free_te: dict, free_ty: dict):
    match t:
        case named.Var(n):
            v = tescope.get(n) or free_te.get(n)
            if v is None:
                v = free_te[n] = new_var(TeVar, _display(n))
            return box_var(v)
        case named.Abs(x, a, b):
            v = new_var(TeVar, _display(x))
            return _TeAbs(
                _go_ty(a, tyscope, free_ty),
                bind_var(v, _go_te(b, {**tescope, x: v}, tyscope, free_te, free_ty)),
            )
        case named.App(f, u):
            return _TeApp(
                _go_te(f, tescope, tyscope, free_te, free_ty),
                _go_te(u, tescope, tyscope, free_te, free_ty),
            )
        case named.Lam(x, b):
            v = new_var(TyVar, _display(x))
            return _TeLam(
                bind_var(v, _go_te(b, tescope, {**tyscope, x: v}, free_te, free_ty))
            )
        case named.Spe(f, a):
            return _TeSpe(
                _go_te(f, tescope, tyscope, free_te, free_ty),
                _go_ty(a, tyscope, free_ty),
            )
    raise TypeError(f"not a term: {t!r}")
