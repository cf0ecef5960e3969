"""Variables, boxed values, and binders with two-phase substitution closures.

A value "under construction" lives in a box that tracks its free variables.
Binding a variable (`bind_var`) or sealing a box (`unbox`) runs *phase one*
of every closure inside: each variable occurrence resolves its key to an
environment slot index exactly once.  The substitution function stored in a
binder is pure *phase two*: it writes one slot and re-runs the body closure,
which only performs slot-indexed reads and constant work per node.  No name
or key is ever consulted during substitution, so capture cannot arise and
substitution stays cheap no matter how often the binder is applied.

Debug instrumentation (slot-lookup counter, environment owner tags) is
enabled by setting the BINDCORE_DEBUG environment variable to any non-empty
value, or at runtime via `enable_debug`.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Any, Callable, Generic, Optional, TypeVar, Union

T = TypeVar("T")
A = TypeVar("A")
B = TypeVar("B")
C = TypeVar("C")

__all__ = [
    "Var",
    "Binder",
    "Closed",
    "Open",
    "BoxVal",
    "BindDebugError",
    "new_var",
    "name_of",
    "eq_vars",
    "box",
    "box_var",
    "apply_box",
    "bind_var",
    "unbox",
    "subst",
    "unbind",
    "unbind2",
    "eq_binder",
    "box_binder",
    "binder_info",
    "is_closed",
    "occur",
    "box_vars",
    "enable_debug",
    "debug_enabled",
    "phase1_lookup_count",
]


class BindDebugError(RuntimeError):
    """An internal invariant was violated while debug checks were active."""


# --- debug instrumentation -------------------------------------------------

_debug = bool(os.environ.get("BINDCORE_DEBUG"))


class _Stats:
    __slots__ = ("lookups",)

    def __init__(self) -> None:
        self.lookups = 0


_stats = _Stats()


def enable_debug(on: bool = True) -> None:
    """Toggle debug instrumentation at runtime.

    The mode is captured when closures are built, so it applies to boxes
    constructed after the call, not retroactively.
    """
    global _debug
    _debug = bool(on)


def debug_enabled() -> bool:
    return _debug


def phase1_lookup_count() -> int:
    """Total key-to-slot lookups performed so far (debug mode only)."""
    return _stats.lookups


# --- environments ----------------------------------------------------------

# An environment is a fixed-size slot store.  Slots below a box's bound
# count belong to variables bound inside it; the remaining slots hold free
# variables and are assigned at unbox time.  In debug mode each slot carries
# the key of the variable that owns it, and every access is checked.


class _Env(list):
    __slots__ = ("owners",)


def _new_env(size: int, debug: bool) -> _Env:
    env = _Env(itertools.repeat(None, size))
    env.owners = [None] * size if debug else None
    return env


def _copy_env(env: _Env) -> _Env:
    out = _Env(env)
    owners = env.owners
    out.owners = None if owners is None else list(owners)
    return out


def _env_read(env: _Env, slot: int, key: int) -> Any:
    owners = env.owners
    if owners is not None and owners[slot] != key:
        raise BindDebugError(
            f"slot {slot} owned by key {owners[slot]}, read as key {key}"
        )
    return env[slot]


def _env_write(env: _Env, slot: int, value: Any, key: int) -> None:
    env[slot] = value
    owners = env.owners
    if owners is not None:
        owners[slot] = key


# --- variables and boxes ---------------------------------------------------

_keys = itertools.count()  # atomic under CPython; sole shared mutable state


class Var(Generic[T]):
    """A free variable: a globally unique key plus a display name.

    `mkfree` injects the variable into its syntax type; `self_box` is the
    variable's boxed form, computed once at creation.
    """

    __slots__ = ("key", "prefix", "suffix", "mkfree", "self_box")

    key: int
    prefix: str
    suffix: Optional[int]
    mkfree: Callable[["Var[T]"], T]
    self_box: "Open[T]"

    def __init__(self, key, prefix, suffix, mkfree):
        self.key = key
        self.prefix = prefix
        self.suffix = suffix
        self.mkfree = mkfree

    def __repr__(self) -> str:
        return f"<var {name_of(self)}#{self.key}>"


@dataclass(eq=False, slots=True)
class Binder(Generic[A, B]):
    """A bound slot in a value of type B, substituted by calling `value`.

    `occurs` tells whether the bound variable is used at all; `rank` is the
    number of free variables remaining in the body.
    """

    name: str
    occurs: bool
    rank: int
    mkfree: Callable[[Var[A]], A]
    value: Callable[[A], B]

    def __repr__(self) -> str:
        return f"<binder {self.name} occurs={self.occurs} rank={self.rank}>"


@dataclass(eq=False, slots=True)
class Closed(Generic[T]):
    """A box with no free variables."""

    value: T


@dataclass(eq=False, slots=True)
class Open(Generic[T]):
    """A box with free variables, evaluated through a two-phase closure.

    `vars` is strictly ascending by key; `bound` counts environment slots
    already reserved for variables bound inside the box.  `closure` maps a
    key-to-slot table to a function evaluating the content in a slot store.
    """

    vars: tuple[Var, ...]
    bound: int
    closure: Callable[[dict], Callable[[_Env], T]]


BoxVal = Union[Closed[T], Open[T]]


def _split_name(name: str) -> tuple[str, Optional[int]]:
    # longest run of trailing decimal digits becomes the suffix
    stem = name.rstrip("0123456789")
    digits = name[len(stem):]
    return stem, (int(digits) if digits else None)


def new_var(mkfree: Callable[[Var[T]], T], name: str) -> Var[T]:
    """Create a fresh variable whose occurrences render as `name`."""
    if not name:
        raise ValueError("variable name must be non-empty")
    prefix, suffix = _split_name(name)
    v: Var[T] = Var(next(_keys), prefix, suffix, mkfree)
    key = v.key

    def phase1(vp: dict, _key=key) -> Callable[[_Env], T]:
        if _debug:
            _stats.lookups += 1
            slot = vp[_key]
            return lambda env: _env_read(env, slot, _key)
        slot = vp[_key]
        return lambda env: env[slot]

    v.self_box = Open((v,), 0, phase1)
    return v


def name_of(v: Var) -> str:
    suffix = v.suffix
    return v.prefix if suffix is None else f"{v.prefix}{suffix}"


def eq_vars(v1: Var, v2: Var) -> bool:
    return v1.key == v2.key


def box(value: T) -> BoxVal[T]:
    """Inject a value containing no library variables into a box."""
    return Closed(value)


def box_var(v: Var[T]) -> BoxVal[T]:
    """The boxed form of a variable (memoized on the variable)."""
    return v.self_box


def merge_box_vars(a: tuple[Var, ...], b: tuple[Var, ...]) -> tuple[Var, ...]:
    """Key-sorted union of two sorted variable tuples."""
    merged = _merge_vars(a, b)
    if _debug:
        _check_sorted(merged)
    return merged


def _merge_vars(a: tuple[Var, ...], b: tuple[Var, ...]) -> tuple[Var, ...]:
    out: list[Var] = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ka, kb = a[i].key, b[j].key
        if ka == kb:
            out.append(a[i])
            i += 1
            j += 1
        elif ka < kb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _check_sorted(vs: tuple[Var, ...]) -> None:
    for i in range(1, len(vs)):
        if vs[i - 1].key >= vs[i].key:
            raise BindDebugError(f"variable list not strictly sorted: {vs}")


def apply_box(f: BoxVal[Callable[[A], B]], a: BoxVal[A]) -> BoxVal[B]:
    """Apply a boxed function to a boxed argument."""
    if isinstance(f, Closed):
        if isinstance(a, Closed):
            return Closed(f.value(a.value))
        fval = f.value
        acl = a.closure

        def phase1(vp):
            a2 = acl(vp)
            return lambda env: fval(a2(env))

        return Open(a.vars, a.bound, phase1)
    if isinstance(a, Closed):
        aval = a.value
        fcl = f.closure

        def phase1(vp):
            f2 = fcl(vp)
            return lambda env: f2(env)(aval)

        return Open(f.vars, f.bound, phase1)
    fcl = f.closure
    acl = a.closure

    def phase1(vp):
        f2 = fcl(vp)
        a2 = acl(vp)
        return lambda env: f2(env)(a2(env))

    return Open(merge_box_vars(f.vars, a.vars), max(f.bound, a.bound), phase1)


def _index_of(vs: tuple[Var, ...], key: int) -> int:
    for i, v in enumerate(vs):
        k = v.key
        if k == key:
            return i
        if k > key:
            return -1
    return -1


def _binder_name(x: Var, remaining: tuple[Var, ...]) -> str:
    # keep the prefix, pick the smallest suffix (none < 0 < 1 < ...) whose
    # rendering clashes with no variable left free in the body
    taken = {name_of(v) for v in remaining}
    prefix = x.prefix
    if prefix and prefix not in taken:
        return prefix
    i = 0
    while f"{prefix}{i}" in taken:
        i += 1
    return f"{prefix}{i}"


def bind_var(x: Var[A], b: BoxVal[B]) -> BoxVal[Binder[A, B]]:
    """Bind a variable in a box, producing a boxed binder.

    The stored binder name is recomputed so that it cannot clash with any
    variable remaining free in the body.
    """
    mkfree = x.mkfree
    if isinstance(b, Closed):
        v = b.value
        return Closed(Binder(_binder_name(x, ()), False, 0, mkfree, lambda _a: v))
    vs = b.vars
    n = b.bound
    cl = b.closure
    key = x.key
    idx = _index_of(vs, key)
    if idx < 0:
        # bound variable absent from the body: constant binder, still open
        name = _binder_name(x, vs)
        rank = len(vs)

        def phase1_skip(vp):
            body2 = cl(vp)

            def phase2(env):
                v = body2(env)
                return Binder(name, False, rank, mkfree, lambda _a: v)

            return phase2

        return Open(vs, n, phase1_skip)
    if len(vs) == 1:
        # x is the last free variable: run phase one now, the box is sealed
        name = _binder_name(x, ())
        phase2 = cl({key: n})
        size = n + 1
        if _debug:

            def value_dbg(a):
                env = _new_env(size, True)
                _env_write(env, n, a, key)
                return phase2(env)

            return Closed(Binder(name, True, 0, mkfree, value_dbg))

        def value(a):
            env = _new_env(size, False)
            env[n] = a
            return phase2(env)

        return Closed(Binder(name, True, 0, mkfree, value))
    # x occurs along with other free variables: reserve the next bound slot
    rest = vs[:idx] + vs[idx + 1:]
    name = _binder_name(x, rest)
    rank = len(rest)
    slot = n
    debug = _debug

    def phase1(vp):
        vp2 = dict(vp)
        vp2[key] = slot
        body2 = cl(vp2)
        if debug:

            def phase2_dbg(env):
                def value(a):
                    env2 = _copy_env(env)
                    _env_write(env2, slot, a, key)
                    return body2(env2)

                return Binder(name, True, rank, mkfree, value)

            return phase2_dbg

        def phase2(env):
            def value(a):
                env2 = _Env(env)
                env2.owners = None
                env2[slot] = a
                return body2(env2)

            return Binder(name, True, rank, mkfree, value)

        return phase2

    return Open(rest, n + 1, phase1)


def unbox(b: BoxVal[T]) -> T:
    """Seal a box; its free variables are left free in the result."""
    if isinstance(b, Closed):
        return b.value
    vs = b.vars
    n = b.bound
    vp = {}
    for i, v in enumerate(vs):
        vp[v.key] = n + i
    phase2 = b.closure(vp)
    debug = _debug
    env = _new_env(n + len(vs), debug)
    for i, v in enumerate(vs):
        if debug:
            _env_write(env, n + i, v.mkfree(v), v.key)
        else:
            env[n + i] = v.mkfree(v)
    return phase2(env)


def subst(b: Binder[A, B], a: A) -> B:
    """Substitute the bound variable of a binder with a value."""
    if _debug:
        before = _stats.lookups
        out = b.value(a)
        if _stats.lookups != before:
            raise BindDebugError(
                f"{_stats.lookups - before} slot lookups during substitution"
            )
        return out
    return b.value(a)


def unbind(b: Binder[A, B]) -> tuple[Var[A], B]:
    """Open a binder by substituting a fresh variable named after it."""
    x = new_var(b.mkfree, b.name)
    return x, subst(b, x.mkfree(x))


def unbind2(b1: Binder[A, B], b2: Binder[A, C]) -> tuple[Var[A], B, C]:
    """Open two binders with one shared fresh variable."""
    x = new_var(b1.mkfree, b1.name)
    arg = x.mkfree(x)
    return x, subst(b1, arg), subst(b2, arg)


def eq_binder(
    eq: Callable[[B, B], bool], b1: Binder[A, B], b2: Binder[A, B]
) -> bool:
    """Compare two binder bodies after substituting one shared fresh variable."""
    x = new_var(b1.mkfree, b1.name)
    arg = x.mkfree(x)
    return eq(subst(b1, arg), subst(b2, arg))


def box_binder(
    lift: Callable[[B], BoxVal[B]], b: Binder[A, B]
) -> BoxVal[Binder[A, B]]:
    """Re-box a binder: open it, lift the body, and bind the variable again."""
    x, body = unbind(b)
    return bind_var(x, lift(body))


def binder_info(b: Binder) -> tuple[str, bool, int]:
    return b.name, b.occurs, b.rank


def is_closed(b: BoxVal) -> bool:
    return isinstance(b, Closed)


def occur(x: Var, b: BoxVal) -> bool:
    return isinstance(b, Open) and _index_of(b.vars, x.key) >= 0


def box_vars(b: BoxVal) -> tuple[Var, ...]:
    """The free variables of a box, strictly ascending by key."""
    return b.vars if isinstance(b, Open) else ()
