"""Church-style System F: syntax, normalization, printing, and equality.

Types bind types (quantifiers), terms bind terms (abstractions), and terms
bind types (type abstractions), so this exercises every binding shape the
core supports.  Constructors starting with an underscore are the *smart*
constructors operating on boxed operands; the bare dataclasses are the
finished syntax used for pattern matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .combinators import box_apply, box_apply2
from .core import (
    Binder,
    BoxVal,
    Var,
    bind_var,
    box_binder,
    box_var,
    eq_binder,
    eq_vars,
    name_of,
    subst,
    unbind,
    unbox,
)

__all__ = [
    "Ty",
    "TyVar",
    "TyArr",
    "TyAll",
    "Te",
    "TeVar",
    "TeAbs",
    "TeApp",
    "TeLam",
    "TeSpe",
    "_TyVar",
    "_TyArr",
    "_TyAll",
    "_TeVar",
    "_TeAbs",
    "_TeApp",
    "_TeLam",
    "_TeSpe",
    "lift_ty",
    "lift_te",
    "hnf",
    "nf",
    "StepBudgetExceeded",
    "print_ty",
    "print_te",
    "eq_ty",
    "eq_te",
    "update_names",
]


# --- abstract syntax -------------------------------------------------------


@dataclass(eq=False, slots=True)
class TyVar:
    var: Var["Ty"]


@dataclass(eq=False, slots=True)
class TyArr:
    dom: "Ty"
    cod: "Ty"


@dataclass(eq=False, slots=True)
class TyAll:
    binder: Binder["Ty", "Ty"]


Ty = Union[TyVar, TyArr, TyAll]


@dataclass(eq=False, slots=True)
class TeVar:
    var: Var["Te"]


@dataclass(eq=False, slots=True)
class TeAbs:
    ty: "Ty"
    binder: Binder["Te", "Te"]


@dataclass(eq=False, slots=True)
class TeApp:
    fn: "Te"
    arg: "Te"


@dataclass(eq=False, slots=True)
class TeLam:
    binder: Binder["Ty", "Te"]


@dataclass(eq=False, slots=True)
class TeSpe:
    fn: "Te"
    ty: "Ty"


Te = Union[TeVar, TeAbs, TeApp, TeLam, TeSpe]


# --- smart constructors ----------------------------------------------------

_TyVar = box_var
_TeVar = box_var


def _TyArr(a: BoxVal[Ty], b: BoxVal[Ty]) -> BoxVal[Ty]:
    return box_apply2(TyArr, a, b)


def _TyAll(f: BoxVal[Binder[Ty, Ty]]) -> BoxVal[Ty]:
    return box_apply(TyAll, f)


def _TeAbs(a: BoxVal[Ty], f: BoxVal[Binder[Te, Te]]) -> BoxVal[Te]:
    return box_apply2(TeAbs, a, f)


def _TeApp(t: BoxVal[Te], u: BoxVal[Te]) -> BoxVal[Te]:
    return box_apply2(TeApp, t, u)


def _TeLam(f: BoxVal[Binder[Ty, Te]]) -> BoxVal[Te]:
    return box_apply(TeLam, f)


def _TeSpe(t: BoxVal[Te], a: BoxVal[Ty]) -> BoxVal[Te]:
    return box_apply2(TeSpe, t, a)


# --- lifting ---------------------------------------------------------------


def lift_ty(a: Ty) -> BoxVal[Ty]:
    """Re-open a finished type so its variables become bindable again."""
    match a:
        case TyVar(x):
            return box_var(x)
        case TyArr(dom, cod):
            return _TyArr(lift_ty(dom), lift_ty(cod))
        case TyAll(f):
            return _TyAll(box_binder(lift_ty, f))
    raise TypeError(f"not a type: {a!r}")


def lift_te(t: Te) -> BoxVal[Te]:
    """Re-open a finished term so its variables become bindable again."""
    match t:
        case TeVar(x):
            return box_var(x)
        case TeAbs(a, f):
            return _TeAbs(lift_ty(a), box_binder(lift_te, f))
        case TeApp(fn, arg):
            return _TeApp(lift_te(fn), lift_te(arg))
        case TeLam(f):
            return _TeLam(box_binder(lift_te, f))
        case TeSpe(fn, a):
            return _TeSpe(lift_te(fn), lift_ty(a))
    raise TypeError(f"not a term: {t!r}")


# --- normalization ---------------------------------------------------------


class StepBudgetExceeded(Exception):
    """Raised when a bounded normalization runs out of beta steps."""

    def __init__(self, steps: int) -> None:
        super().__init__(f"beta-step budget of {steps} exhausted")
        self.steps = steps


def hnf(t: Te) -> Te:
    """Head normal form, right-to-left call-by-value, never under binders.

    May diverge on ill-typed input; type-check first.
    """
    match t:
        case TeApp(fn, arg):
            v = hnf(arg)
            match hnf(fn):
                case TeAbs(_, f):
                    return hnf(subst(f, v))
                case h:
                    return TeApp(h, v)
        case TeSpe(fn, a):
            match hnf(fn):
                case TeLam(f):
                    return hnf(subst(f, a))
                case h:
                    return TeSpe(h, a)
    return t


def nf(t: Te, max_steps: Optional[int] = None) -> Te:
    """Full beta-normal form, reducing under binders.

    Terminates on well-typed terms.  `max_steps`, when given, bounds the
    number of beta steps and raises `StepBudgetExceeded` past the bound.

    Substitution shares subterms, so results known to be normal are cached
    by object identity for the duration of the call, and a term that did
    not reduce is returned as-is instead of being rebuilt.  The result is
    the same normal form up to the stored binder names.
    """
    remaining = max_steps
    normal: dict[int, Te] = {}  # values keep the keys' objects alive

    def beta() -> None:
        nonlocal remaining
        if remaining is not None:
            remaining -= 1
            if remaining < 0:
                raise StepBudgetExceeded(max_steps)

    def go(t: Te) -> Te:
        if id(t) in normal:
            return t
        tt = type(t)
        if tt is TeApp:
            u = go(t.arg)
            fn = go(t.fn)
            if type(fn) is TeAbs:
                beta()
                return go(subst(fn.binder, u))
            r = t if (fn is t.fn and u is t.arg) else TeApp(fn, u)
            normal[id(r)] = r
            return r
        if tt is TeVar:
            return t
        if tt is TeAbs:
            x, body = unbind(t.binder)
            body2 = go(body)
            r = t if body2 is body else TeAbs(t.ty, unbox(bind_var(x, lift_te(body2))))
            normal[id(r)] = r
            return r
        if tt is TeLam:
            x, body = unbind(t.binder)
            body2 = go(body)
            r = t if body2 is body else TeLam(unbox(bind_var(x, lift_te(body2))))
            normal[id(r)] = r
            return r
        if tt is TeSpe:
            fn = go(t.fn)
            if type(fn) is TeLam:
                beta()
                return go(subst(fn.binder, t.ty))
            r = t if fn is t.fn else TeSpe(fn, t.ty)
            normal[id(r)] = r
            return r
        raise TypeError(f"not a term: {t!r}")

    return go(t)


# --- printing --------------------------------------------------------------

# Canonical grammar, emitted exactly (single spaces only where shown):
#   A ::= ident | "(" A " => " A ")" | "all " ident "." A
#   t ::= ident | "fun " ident ":" A "." t | "(" t " " t ")"
#       | "Lam " ident "." t | "(" t " [" A "])"
# The unicode form uses the symbols below instead of the keywords.

_UNI = {"arrow": " ⇒ ", "forall": "∀", "lam": "λ", "tlam": "Λ"}
_ASC = {"arrow": " => ", "forall": "all ", "lam": "fun ", "tlam": "Lam "}


def print_ty(a: Ty, ascii: bool = False) -> str:
    """Render a type on the canonical grammar (unicode unless `ascii`)."""
    sym = _ASC if ascii else _UNI

    def go(a: Ty) -> str:
        match a:
            case TyVar(x):
                return name_of(x)
            case TyArr(dom, cod):
                return f"({go(dom)}{sym['arrow']}{go(cod)})"
            case TyAll(f):
                x, body = unbind(f)
                return f"{sym['forall']}{name_of(x)}.{go(body)}"
        raise TypeError(f"not a type: {a!r}")

    return go(a)


def print_te(t: Te, ascii: bool = False) -> str:
    """Render a term on the canonical grammar (unicode unless `ascii`)."""
    sym = _ASC if ascii else _UNI

    def go(t: Te) -> str:
        match t:
            case TeVar(x):
                return name_of(x)
            case TeAbs(a, f):
                x, body = unbind(f)
                return f"{sym['lam']}{name_of(x)}:{print_ty(a, ascii)}.{go(body)}"
            case TeApp(fn, arg):
                return f"({go(fn)} {go(arg)})"
            case TeLam(f):
                x, body = unbind(f)
                return f"{sym['tlam']}{name_of(x)}.{go(body)}"
            case TeSpe(fn, a):
                return f"({go(fn)} [{print_ty(a, ascii)}])"
        raise TypeError(f"not a term: {t!r}")

    return go(t)


# --- alpha-equality --------------------------------------------------------


def eq_ty(a: Ty, b: Ty) -> bool:
    """Structural type equality modulo renaming of bound variables."""
    if a is b:
        return True
    match (a, b):
        case (TyVar(x1), TyVar(x2)):
            return eq_vars(x1, x2)
        case (TyArr(d1, c1), TyArr(d2, c2)):
            return eq_ty(d1, d2) and eq_ty(c1, c2)
        case (TyAll(f1), TyAll(f2)):
            return eq_binder(eq_ty, f1, f2)
    return False


def eq_te(t: Te, u: Te) -> bool:
    """Structural term equality modulo renaming of bound variables."""
    if t is u:
        return True
    match (t, u):
        case (TeVar(x1), TeVar(x2)):
            return eq_vars(x1, x2)
        case (TeAbs(a1, f1), TeAbs(a2, f2)):
            return eq_ty(a1, a2) and eq_binder(eq_te, f1, f2)
        case (TeApp(t1, u1), TeApp(t2, u2)):
            return eq_te(t1, t2) and eq_te(u1, u2)
        case (TeLam(f1), TeLam(f2)):
            return eq_binder(eq_te, f1, f2)
        case (TeSpe(t1, a1), TeSpe(t2, a2)):
            return eq_te(t1, t2) and eq_ty(a1, a2)
    return False


def _binder_name_list(t: Te) -> list[str]:
    """Stored binder names in preorder, type binders included."""
    out: list[str] = []

    def go_ty(a: Ty) -> None:
        match a:
            case TyVar(_):
                pass
            case TyArr(d, c):
                go_ty(d)
                go_ty(c)
            case TyAll(f):
                out.append(f.name)
                _, body = unbind(f)
                go_ty(body)

    def go(t: Te) -> None:
        match t:
            case TeVar(_):
                pass
            case TeAbs(a, f):
                go_ty(a)
                out.append(f.name)
                _, body = unbind(f)
                go(body)
            case TeApp(fn, arg):
                go(fn)
                go(arg)
            case TeLam(f):
                out.append(f.name)
                _, body = unbind(f)
                go(body)
            case TeSpe(fn, a):
                go(fn)
                go_ty(a)

    go(t)
    return out


def update_names(t: Te) -> Te:
    """Recompute the stored names of all binders in a term.

    Substitution never renames, so a term that went through substitutions
    can display two distinct variables under the same name.  Re-lifting and
    unboxing rebuilds every binder, rerunning the clash-avoiding naming
    rule against the variables free in each body.  One pass settles the
    outermost names (they depend only on free variables); each further
    pass lets inner binders see the names chosen outside them, so the
    iteration reaches a fixed point in at most the binder-nesting depth.
    The result is alpha-equal to the input.
    """
    names = _binder_name_list(t)
    while True:
        t = unbox(lift_te(t))
        renamed = _binder_name_list(t)
        if renamed == names:
            return t
        names = renamed
