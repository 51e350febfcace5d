"""Hypothesis strategies for well-formed expression trees."""

from hypothesis import strategies as st

from pineta.errors import PinetaError
from pineta.expr import GENERATORS, Atom, bar, circle_sum, conn_sum, twist

PIN_ATOMS = [a for a in GENERATORS if a != "CP2"]


def _attempt(fn, *args):
    try:
        return fn(*args)
    except PinetaError:
        return None


def _extend(children):
    return st.one_of(
        children.map(lambda x: _attempt(bar, x)),
        children.map(lambda x: _attempt(twist, x)),
        st.tuples(children, children).map(lambda p: _attempt(conn_sum, *p)),
        st.tuples(children, children).map(lambda p: _attempt(circle_sum, *p)),
    ).filter(lambda x: x is not None)


def expressions(atoms=GENERATORS, max_leaves=5):
    return st.recursive(st.sampled_from(list(atoms)).map(Atom), _extend, max_leaves=max_leaves)


def pin_expressions(max_leaves=5):
    """Trees with a Pin+ structure (every atom except CP2)."""
    return expressions(PIN_ATOMS, max_leaves)


def non_orientable_pin(max_leaves=4):
    from pineta.expr import card

    return pin_expressions(max_leaves).filter(lambda x: not card(x).orientable)
