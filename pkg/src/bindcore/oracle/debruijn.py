"""Canonical de Bruijn forms deciding alpha-equivalence.

Bound variables become 1-based indices (distance to the binder), free
variables keep their names, so alpha-equivalent named terms convert to
structurally equal trees.  Indices are used only as a canonical form;
reduction happens elsewhere.  Independent of the binding core.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import named

__all__ = [
    "DbTy",
    "TVar",
    "TInd",
    "TArr",
    "TAll",
    "DbTe",
    "Var",
    "Ind",
    "Abs",
    "App",
    "Lam",
    "Spe",
    "to_db",
    "to_db_ty",
    "alpha_eq",
    "alpha_eq_ty",
]


@dataclass(frozen=True)
class TVar:
    name: str  # free


@dataclass(frozen=True)
class TInd:
    k: int  # bound, 1-based


@dataclass(frozen=True)
class TArr:
    dom: "DbTy"
    cod: "DbTy"


@dataclass(frozen=True)
class TAll:
    body: "DbTy"


DbTy = Union[TVar, TInd, TArr, TAll]


@dataclass(frozen=True)
class Var:
    name: str  # free


@dataclass(frozen=True)
class Ind:
    k: int  # bound, 1-based


@dataclass(frozen=True)
class Abs:
    ty: "DbTy"
    body: "DbTe"


@dataclass(frozen=True)
class App:
    fn: "DbTe"
    arg: "DbTe"


@dataclass(frozen=True)
class Lam:
    body: "DbTe"


@dataclass(frozen=True)
class Spe:
    fn: "DbTe"
    ty: "DbTy"


DbTe = Union[Var, Ind, Abs, App, Lam, Spe]


def to_db_ty(a: named.Ty, ty_env: tuple[str, ...] = ()) -> DbTy:
    """Canonical form of a type; `ty_env` lists bound names innermost first."""
    match a:
        case named.TVar(x):
            try:
                return TInd(ty_env.index(x) + 1)
            except ValueError:
                return TVar(x)
        case named.TArr(d, c):
            return TArr(to_db_ty(d, ty_env), to_db_ty(c, ty_env))
        case named.TAll(x, b):
            return TAll(to_db_ty(b, (x, *ty_env)))
    raise TypeError(f"not a type: {a!r}")


def to_db(
    t: named.Te,
    te_env: tuple[str, ...] = (),
    ty_env: tuple[str, ...] = (),
) -> DbTe:
    """Canonical form of a term; environments list bound names innermost first."""
    match t:
        case named.Var(x):
            try:
                return Ind(te_env.index(x) + 1)
            except ValueError:
                return Var(x)
        case named.Abs(x, a, b):
            return Abs(to_db_ty(a, ty_env), to_db(b, (x, *te_env), ty_env))
        case named.App(f, u):
            return App(to_db(f, te_env, ty_env), to_db(u, te_env, ty_env))
        case named.Lam(x, b):
            return Lam(to_db(b, te_env, (x, *ty_env)))
        case named.Spe(f, a):
            return Spe(to_db(f, te_env, ty_env), to_db_ty(a, ty_env))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq(t: named.Te, u: named.Te) -> bool:
    return to_db(t) == to_db(u)


def alpha_eq_ty(a: named.Ty, b: named.Ty) -> bool:
    return to_db_ty(a) == to_db_ty(b)
