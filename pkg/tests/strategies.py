"""
Hypothesis strategies for random formulas, one per dialect.

Formulas are built to a fixed syntactic height so modal depth and node
counts stay small enough for exhaustive evaluation over tiny models.
"""

import hypothesis.strategies as st

from teamlib.formulas import And, Bot, Box, Dia, Incl, Nab, NeDisj, NegProp, Or, Prop, Top

PROPS = ("p",)


def literals(props=PROPS):
    names = st.sampled_from(props)
    return st.one_of(
        names.map(Prop),
        names.map(NegProp),
        st.just(Top()),
        st.just(Bot()),
    )


def _grow(base, height, unary, binary):
    if height == 0:
        return base
    inner = _grow(base, height - 1, unary, binary)
    options = [base]
    options.extend(st.builds(kind, inner) for kind in unary)
    options.extend(st.builds(kind, inner, inner) for kind in binary)
    return st.one_of(*options)


def ml_formulas(props=PROPS, height=3):
    return _grow(literals(props), height, (Dia, Box), (And, Or))


def nab_formulas(props=PROPS, height=3):
    return _grow(literals(props), height, (Dia, Box, Nab), (And, Or))


def nedisj_formulas(props=PROPS, height=3):
    return _grow(literals(props), height, (Dia, Box), (And, Or, NeDisj))


@st.composite
def inclusion_atoms(draw, props=PROPS, max_arity=2):
    arity = draw(st.integers(min_value=1, max_value=max_arity))
    args = ml_formulas(props, height=1)
    lhs = tuple(draw(args) for _ in range(arity))
    rhs = tuple(draw(args) for _ in range(arity))
    return Incl(lhs, rhs)


def minc_formulas(props=PROPS, height=2):
    base = st.one_of(literals(props), inclusion_atoms(props))
    return _grow(base, height, (Dia, Box), (And, Or))


DIALECT_STRATEGIES = {
    "ML": ml_formulas,
    "MINC": minc_formulas,
    "MLNab": nab_formulas,
    "MLNeDisj": nedisj_formulas,
}
