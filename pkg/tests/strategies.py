"""Hypothesis strategies for valid profiles."""

from hypothesis import strategies as st

from admitmatch.dsl import _parse_value
from admitmatch.model import (
    AtLeast,
    AttributeName,
    Constraint,
    Flexibility,
    Number,
    Profile,
    Range,
    Role,
    Text,
    TextSet,
)

_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
_ALNUM = _LETTERS + "0123456789_"

idents = st.builds(
    lambda head, tail: head + tail,
    st.sampled_from(_LETTERS),
    st.text(_ALNUM, max_size=10),
).filter(lambda s: s.casefold() != "count")


def _is_text(s):
    try:
        return isinstance(_parse_value(s, 1, 1), Text)
    except ValueError:
        return False


texts = st.builds(
    lambda head, tail: (head + tail).strip(),
    st.sampled_from(_LETTERS),
    st.text(_ALNUM + " .-", max_size=14),
).filter(_is_text)

reals = st.one_of(
    st.integers(0, 1000).map(float),
    st.floats(0, 1e6, allow_nan=False, allow_infinity=False),
)


@st.composite
def ranges(draw):
    a, b = draw(reals), draw(reals)
    return Range(min(a, b), max(a, b))


@st.composite
def text_sets(draw):
    members = draw(st.lists(texts, min_size=1, max_size=4, unique_by=str.casefold))
    return TextSet(tuple(members))


values = st.one_of(reals.map(Number), ranges(), text_sets(), texts.map(Text))


@st.composite
def constraints(draw, name=None, value=None):
    category = draw(st.none() | idents)
    attr = AttributeName(draw(idents) if name is None else name, category)
    if value is None:
        value = draw(values)
    flex = draw(st.sampled_from(list(Flexibility)))
    priority = draw(st.one_of(st.just(1.0), st.just(0.0), st.floats(0, 1)))
    return Constraint(attr, value, flex, priority)


@st.composite
def profiles(draw, role=Role.REQUIREMENT, max_size=8):
    items = draw(st.lists(constraints(), max_size=max_size, unique_by=lambda c: c.attribute.key))
    if draw(st.booleans()):
        # one composite category with a count constraint over its members
        members = [c for c in items if c.attribute.category is not None]
        if members:
            cat = members[0].attribute.category
            m = sum(1 for c in items if c.attribute.in_category(cat))
            k = draw(st.integers(1, m))
            count = draw(st.sampled_from([AtLeast(k), Number(k)]))
            items.append(Constraint(AttributeName("count", cat), count))
    return Profile(role, tuple(items))


def random_profile(rng, role=Role.REQUIREMENT, max_size=8):
    """Plain seeded generator for bulk round-trip runs, no shrinking."""

    def ident():
        while True:
            s = rng.choice(_LETTERS) + "".join(rng.choices(_ALNUM, k=rng.randint(0, 10)))
            if s.casefold() != "count":
                return s

    def text():
        while True:
            s = (rng.choice(_LETTERS) + "".join(rng.choices(_ALNUM + " .-", k=rng.randint(0, 14)))).strip()
            if _is_text(s):
                return s

    def real():
        return float(rng.randint(0, 1000)) if rng.random() < 0.5 else rng.uniform(0, 1e6)

    def value():
        kind = rng.randrange(4)
        if kind == 0:
            return Number(real())
        if kind == 1:
            a, b = real(), real()
            return Range(min(a, b), max(a, b))
        if kind == 2:
            members = {}
            for _ in range(rng.randint(1, 4)):
                t = text()
                members.setdefault(t.casefold(), t)
            return TextSet(tuple(members.values()))
        return Text(text())

    items, keys = [], set()
    for _ in range(rng.randint(0, max_size)):
        attr = AttributeName(ident(), ident() if rng.random() < 0.5 else None)
        if attr.key in keys:
            continue
        keys.add(attr.key)
        priority = rng.choice([1.0, 0.0, rng.random()])
        items.append(Constraint(attr, value(), rng.choice(list(Flexibility)), priority))
    members = [c for c in items if c.attribute.category is not None]
    if members and rng.random() < 0.5:
        cat = members[0].attribute.category
        m = sum(1 for c in items if c.attribute.in_category(cat))
        k = rng.randint(1, m)
        items.append(Constraint(AttributeName("count", cat), rng.choice([AtLeast(k), Number(k)])))
    return Profile(role, tuple(items))
