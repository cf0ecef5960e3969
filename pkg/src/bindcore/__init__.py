"""Variable binding with fast substitution, plus a System F demonstration.

The core API lives here: variables (`new_var`), boxes (`box`, `box_var`,
`apply_box`, `unbox`), binders (`bind_var`, `subst`, `unbind`), and the
derived lifting combinators.  The `systemf`, `typecheck`, `oracle`,
`parser`, and `cli` submodules build a complete Church-style System F
implementation on top.
"""

from .combinators import box_apply, box_apply2, box_list, box_opt
from .core import (
    BindDebugError,
    Binder,
    BoxVal,
    Closed,
    Open,
    Var,
    apply_box,
    bind_var,
    binder_info,
    box,
    box_binder,
    box_var,
    box_vars,
    debug_enabled,
    enable_debug,
    eq_binder,
    eq_vars,
    is_closed,
    name_of,
    new_var,
    occur,
    phase1_lookup_count,
    subst,
    unbind,
    unbind2,
    unbox,
)

__all__ = [
    "BindDebugError",
    "Binder",
    "BoxVal",
    "Closed",
    "Open",
    "Var",
    "apply_box",
    "bind_var",
    "binder_info",
    "box",
    "box_binder",
    "box_apply",
    "box_apply2",
    "box_list",
    "box_opt",
    "box_var",
    "box_vars",
    "debug_enabled",
    "enable_debug",
    "eq_binder",
    "eq_vars",
    "is_closed",
    "name_of",
    "new_var",
    "occur",
    "phase1_lookup_count",
    "subst",
    "unbind",
    "unbind2",
    "unbox",
]
