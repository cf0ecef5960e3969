"""Run a callable with room for very deep recursion.

Normalization and lifting recurse once per syntax node, so terms with long
spines need more stack than a default thread provides.  The work runs on a
dedicated thread with a large stack and a raised recursion limit.
"""

from __future__ import annotations

import sys
import threading
from typing import Any, Callable

__all__ = ["call_with_deep_stack"]


def call_with_deep_stack(
    fn: Callable[..., Any],
    *args: Any,
    stack_bytes: int = 512 * 1024 * 1024,
    recursion_limit: int = 1_000_000,
) -> Any:
    outcome: list = []

    def runner() -> None:
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(recursion_limit)
        try:
            outcome.append((True, fn(*args)))
        except BaseException as exc:  # re-raised on the calling thread
            outcome.append((False, exc))
        finally:
            sys.setrecursionlimit(old)

    old_size = threading.stack_size(stack_bytes)
    try:
        thread = threading.Thread(target=runner, name="bindcore-deep")
        thread.start()
    finally:
        threading.stack_size(old_size)
    thread.join()
    ok, value = outcome[0]
    if not ok:
        raise value
    return value
