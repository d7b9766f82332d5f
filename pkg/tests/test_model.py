import pytest
from hypothesis import given
from hypothesis import strategies as st

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
    category_members,
    validate_profile,
)


def req(*constraints):
    return Profile(Role.REQUIREMENT, constraints)


def c(attr, value, flex=Flexibility.HARD, priority=1.0):
    return Constraint(AttributeName.parse(attr), value, flex, priority)


class TestAttributeName:
    def test_case_and_whitespace_insensitive(self):
        assert AttributeName("Mathematics") == AttributeName("  mathematics ")
        assert AttributeName("x", "Cat") == AttributeName("x", "cat ")
        assert hash(AttributeName("ABC")) == hash(AttributeName("abc"))

    def test_category_matters(self):
        assert AttributeName("Maths", "A") != AttributeName("Maths")

    def test_count_needs_category(self):
        with pytest.raises(ValueError):
            AttributeName("count")
        assert AttributeName("count", "Optional_Subject").is_count

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            AttributeName("  ")
        with pytest.raises(ValueError):
            AttributeName("x", "")

    def test_parse_scope_operator(self):
        a = AttributeName.parse("Optional_Subject :: Economics")
        assert a.category == "Optional_Subject" and a.name == "Economics"
        assert str(a) == "Optional_Subject::Economics"

    @given(st.sampled_from(["Abc", "aBC", " abc", "ABC "]),
           st.sampled_from(["abc", "ABC"]), st.sampled_from(["aBc", "abc "]))
    def test_equality_is_an_equivalence(self, x, y, z):
        a, b, cc = AttributeName(x), AttributeName(y), AttributeName(z)
        assert a == a
        assert (a == b) == (b == a)
        if a == b and b == cc:
            assert a == cc


class TestValues:
    def test_range_order(self):
        with pytest.raises(ValueError):
            Range(100, 40)
        assert Range(40, 40).lo == 40

    def test_at_least_non_negative_integer(self):
        with pytest.raises(ValueError):
            AtLeast(-1)
        with pytest.raises(ValueError):
            AtLeast(2.5)

    def test_text_set_distinct_case_insensitive(self):
        with pytest.raises(ValueError):
            TextSet(("On Campus", "on campus"))
        with pytest.raises(ValueError):
            TextSet(())
        assert "ON CAMPUS" in TextSet(("On Campus", "Off Campus"))

    def test_priority_bounds(self):
        with pytest.raises(ValueError):
            c("x", Number(1), priority=1.5)
        with pytest.raises(ValueError):
            c("x", Number(1), priority=-0.1)

    def test_flexibility_tokens(self):
        assert Flexibility.parse("No") is Flexibility.HARD
        assert Flexibility.parse(" Yes ") is Flexibility.SOFT
        with pytest.raises(ValueError):
            Flexibility.parse("maybe")


class TestValidate:
    def test_textbox3_is_valid(self, textbox3):
        assert validate_profile(textbox3) == []

    def test_empty_profile_valid(self):
        assert validate_profile(req()) == []

    def test_dangling_count(self):
        p = req(c("Optional_Subject::count", AtLeast(3)), c("Programme", Text("IT")))
        (v,) = validate_profile(p)
        assert v.code == "dangling-count" and v.index == 0

    def test_duplicate_attribute(self):
        p = req(c("Mathematics", Number(50)), c("mathematics", Number(60)))
        (v,) = validate_profile(p)
        assert v.code == "duplicate-attribute" and v.index == 1

    def test_count_out_of_range(self):
        p = req(c("A::count", Number(3)), c("A::x", Range(0, 1)), c("A::y", Range(0, 1)))
        assert [v.code for v in validate_profile(p)] == ["count-out-of-range"]
        p = req(c("A::count", AtLeast(0)), c("A::x", Range(0, 1)))
        assert [v.code for v in validate_profile(p)] == ["count-out-of-range"]

    def test_fractional_count(self):
        p = req(c("A::count", Number(1.5)), c("A::x", Range(0, 1)))
        assert [v.code for v in validate_profile(p)] == ["bad-count-value"]

    def test_at_least_outside_count(self):
        p = req(c("Mathematics", AtLeast(50)))
        assert [v.code for v in validate_profile(p)] == ["misplaced-at-least"]

    def test_idempotent(self):
        p = req(c("A::count", Number(3)), c("A::x", Range(0, 1)), c("A::x", Range(0, 1)))
        assert validate_profile(p) == validate_profile(p)

    def test_skills_profile_counts_not_checked(self):
        p = Profile(Role.SKILLS, (c("A::count", Number(3)),))
        assert validate_profile(p) == []


class TestCategoryMembers:
    def test_optional_subject(self, textbox3):
        assert len(category_members(textbox3, "Optional_Subject")) == 9

    def test_compulsory_subject(self, textbox3):
        names = [m.attribute.name for m in category_members(textbox3, "Compulsory_Subject")]
        assert names == ["English_Language", "Mathematics"]

    def test_unknown(self, textbox3):
        assert category_members(textbox3, "Nonexistent") == []

    def test_partition(self, textbox3):
        cats = textbox3.categories()
        members = [m for cat in cats for m in category_members(textbox3, cat)]
        counts = textbox3.count_constraints()
        plain = [x for x in textbox3 if x.attribute.category is None]
        assert len(members) + len(counts) + len(plain) == len(textbox3)
        assert set(members) | set(counts) | set(plain) == set(textbox3)
