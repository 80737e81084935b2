from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rgt.algebra import ActionUniverse
from rgt.errors import (
    EmptyInterval,
    MatrixIncomplete,
    NotSolvable,
    SelfRelation,
    UnboundVariable,
    UniverseMismatch,
    UnknownSubject,
)
from rgt.group import Var, join_of, meet_of
from rgt.solver import (
    SYMBOLIC,
    Concrete,
    DecisionEquation,
    DecisionInterval,
    InfluenceMatrix,
    Interval,
    Kind,
    decision_equation,
    polynomial_to_expr,
    render_diagonal_form,
    resolve_intervals,
    solve_session,
    solve_subject,
)
from rgt.symbolic import SymbolicExpr, parse_expr

from support import eval_terms

GREEK = ActionUniverse(["α", "β", "γ"])
BINARY = ActionUniverse(["go"])

ALLY_BLOCK = join_of([meet_of([Var("a"), Var("b"), Var("d")]), Var("c")])  # abd + c
PAIR_BLOCK = join_of([meet_of([Var("a"), Var("b")]), Var("c")])  # ab + c


def alt(*members, universe=GREEK):
    return universe.alternative(members)


def concrete(*members, universe=GREEK):
    return Concrete(alt(*members, universe=universe))


@st.composite
def polynomials(draw, max_subjects=6):
    names = draw(
        st.lists(
            st.sampled_from(list("abcdef")),
            min_size=1,
            max_size=max_subjects,
            unique=True,
        )
    )

    def build(group):
        if len(group) == 1:
            return Var(group[0])
        labels = [draw(st.integers(0, 1)) for _ in group]
        if len(set(labels)) == 1:
            labels[0] ^= 1
        blocks = [[g for g, l in zip(group, labels) if l == side] for side in (0, 1)]
        op = draw(st.sampled_from([meet_of, join_of]))
        return op(build(block) for block in blocks)

    return build(names)


# -- influence values and matrices -----------------------------------------

def test_interval_requires_ordered_bounds():
    with pytest.raises(EmptyInterval):
        Interval(alt("α"), alt("β"))
    assert Interval(alt("β"), alt("α", "β")).size() == 2


def test_symbolic_is_a_singleton():
    assert SYMBOLIC is type(SYMBOLIC)()


def test_matrix_requires_full_coverage():
    with pytest.raises(MatrixIncomplete, match=r"\(b, a\)"):
        InfluenceMatrix(GREEK, "ab", {("a", "b"): concrete("α")})


def test_matrix_rejects_diagonal():
    with pytest.raises(SelfRelation):
        InfluenceMatrix(
            GREEK,
            "ab",
            {
                ("a", "b"): concrete("α"),
                ("b", "a"): concrete("α"),
                ("a", "a"): concrete("α"),
            },
        )


def test_matrix_rejects_unknown_subject():
    with pytest.raises(UnknownSubject):
        InfluenceMatrix(GREEK, "ab", {("a", "x"): concrete("α"), ("b", "a"): SYMBOLIC})


def test_matrix_rejects_foreign_values():
    with pytest.raises(UniverseMismatch):
        InfluenceMatrix(
            BINARY, "ab", {("a", "b"): concrete("α"), ("b", "a"): SYMBOLIC}
        )


def test_from_rows_is_row_constant():
    m = InfluenceMatrix.from_rows(
        GREEK, "abc", {"a": concrete("α"), "b": SYMBOLIC, "c": concrete("β")}
    )
    assert m.entry("a", "b") == m.entry("a", "c") == concrete("α")
    assert m.entry("b", "a") is SYMBOLIC
    assert m.influences_on("a") == {"b": SYMBOLIC, "c": concrete("β")}


def test_from_rows_requires_every_row():
    with pytest.raises(MatrixIncomplete, match="b"):
        InfluenceMatrix.from_rows(GREEK, "ab", {"a": SYMBOLIC})


# -- decision equations ----------------------------------------------------

def test_equation_for_block_member():
    eq = decision_equation(ALLY_BLOCK, "a", GREEK)
    assert eq.pos == parse_expr("b·d + c", GREEK)
    assert eq.neg == parse_expr("c", GREEK)


def test_equation_for_lone_opponent():
    eq = decision_equation(ALLY_BLOCK, "c", GREEK)
    assert eq.pos.is_one
    assert eq.neg == parse_expr("a·b·d", GREEK)


def test_equation_for_pair_block():
    eq = decision_equation(PAIR_BLOCK, "b", GREEK)
    assert eq.pos == parse_expr("a + c", GREEK)
    assert eq.neg == parse_expr("c", GREEK)


def test_equation_excludes_own_variable():
    for subject in "abcd":
        eq = decision_equation(ALLY_BLOCK, subject, GREEK)
        assert subject not in eq.pos.free_variables
        assert subject not in eq.neg.free_variables


def test_equation_unknown_subject():
    with pytest.raises(UnknownSubject):
        decision_equation(ALLY_BLOCK, "x", GREEK)


def test_equation_render():
    eq = decision_equation(ALLY_BLOCK, "a", GREEK)
    assert eq.render() == "a = (b·d + c)·a + (c)·¬a"


@given(polynomials(max_subjects=4))
@settings(max_examples=200, deadline=None)
def test_expansion_identity(poly):
    """p equals pos·x + neg·x̄ on every ground assignment."""
    universe = ActionUniverse(["α", "β"])
    expr = polynomial_to_expr(poly, universe)
    subjects = sorted(poly.subject_set())
    subject = subjects[0]
    eq = decision_equation(poly, subject, universe)
    values = universe.all_alternatives()

    def assignments(names):
        if not names:
            yield {}
            return
        for rest in assignments(names[1:]):
            for value in values:
                yield {names[0]: value, **rest}

    for assignment in assignments(subjects):
        whole = eval_terms(expr.terms, assignment, universe)
        x = assignment[subject].bits
        pos = eval_terms(eq.pos.terms, assignment, universe)
        neg = eval_terms(eq.neg.terms, assignment, universe)
        assert whole == (pos & x) | (neg & universe.mask & ~x)


# -- solve_subject ---------------------------------------------------------

def test_solved_point():
    eq = decision_equation(ALLY_BLOCK, "a", GREEK)
    interval = solve_subject(
        eq, {"b": concrete("α"), "d": concrete("γ"), "c": concrete("β")}
    )
    assert interval.kind is Kind.POINT
    assert interval.forced_value() == alt("β")
    assert interval.describe() == "a = {β}"


def test_solved_free():
    eq = decision_equation(ALLY_BLOCK, "c", GREEK)
    interval = solve_subject(
        eq, {"a": concrete("α"), "b": concrete("α"), "d": concrete("γ")}
    )
    assert interval.kind is Kind.FREE
    assert interval.describe() == "free choice (1 ⊇ c ⊇ 0)"


def test_solved_symbolic_range():
    eq = decision_equation(ALLY_BLOCK, "a", GREEK)
    interval = solve_subject(
        eq, {"b": concrete("β"), "d": concrete("β"), "c": SYMBOLIC}
    )
    assert interval.kind is Kind.RANGE
    assert interval.sup == parse_expr("{β} + c", GREEK)
    assert interval.inf == parse_expr("c", GREEK)
    assert interval.describe() == "({β} + c) ⊇ a ⊇ c"
    assert interval.forced_value() is None


def test_interval_influence_stays_symbolic_here():
    eq = decision_equation(ALLY_BLOCK, "a", GREEK)
    via_interval = solve_subject(
        eq,
        {
            "b": concrete("β"),
            "d": Interval(GREEK.empty, GREEK.full),
            "c": concrete("β"),
        },
    )
    via_symbolic = solve_subject(
        eq, {"b": concrete("β"), "d": SYMBOLIC, "c": concrete("β")}
    )
    assert via_interval == via_symbolic


def test_missing_influence():
    eq = decision_equation(ALLY_BLOCK, "a", GREEK)
    with pytest.raises(UnboundVariable, match="d"):
        solve_subject(eq, {"b": concrete("α"), "c": concrete("β")})


def test_foreign_influence_universe():
    eq = decision_equation(ALLY_BLOCK, "a", GREEK)
    with pytest.raises(UniverseMismatch):
        solve_subject(
            eq,
            {
                "b": Concrete(BINARY.full),
                "d": concrete("γ"),
                "c": concrete("β"),
            },
        )


def test_unsolvable_handcrafted_equation():
    eq = DecisionEquation(
        "a",
        pos=SymbolicExpr.constant(alt("α")),
        neg=SymbolicExpr.constant(alt("β")),
    )
    with pytest.raises(NotSolvable):
        solve_subject(eq, {})


# -- solution-set oracle ---------------------------------------------------

@given(polynomials(max_subjects=4), st.data())
@settings(max_examples=250, deadline=None)
def test_interval_equals_fixed_point_set(poly, data):
    """{x : x = pos·x + neg·x̄} is exactly {x : inf ⊆ x ⊆ sup}."""
    universe = ActionUniverse(["α", "β", "γ"])
    subjects = sorted(poly.subject_set())
    subject = subjects[0]
    eq = decision_equation(poly, subject, universe)
    others = {
        name: Concrete(
            universe.from_bits(data.draw(st.integers(0, universe.mask), label=name))
        )
        for name in subjects
        if name != subject
    }
    interval = solve_subject(eq, others)
    assignment = {name: value.value for name, value in others.items()}
    pos = eval_terms(eq.pos.terms, assignment, universe)
    neg = eval_terms(eq.neg.terms, assignment, universe)
    inf, sup = interval.inf.as_constant(), interval.sup.as_constant()
    for x in universe.all_alternatives():
        fixed = x.bits == (pos & x.bits) | (neg & universe.mask & ~x.bits)
        inside = inf.leq(x) and x.leq(sup)
        assert fixed == inside


@given(polynomials(max_subjects=4), st.data())
@settings(max_examples=150, deadline=None)
def test_ground_bounds_are_ordered(poly, data):
    universe = ActionUniverse(["α", "β"])
    subjects = sorted(poly.subject_set())
    subject = subjects[0]
    eq = decision_equation(poly, subject, universe)
    influences = {
        name: Concrete(
            universe.from_bits(data.draw(st.integers(0, universe.mask), label=name))
        )
        for name in subjects
        if name != subject
    }
    interval = solve_subject(eq, influences)
    assert interval.inf.as_constant().leq(interval.sup.as_constant())


# -- solve_session ---------------------------------------------------------

def table_matrix(rows):
    return InfluenceMatrix.from_rows(GREEK, sorted(rows), rows)


def test_preliminary_session():
    m = table_matrix(
        {
            "a": concrete("α"),
            "b": concrete("α"),
            "c": concrete("β"),
            "d": concrete("γ"),
        }
    )
    result = solve_session(ALLY_BLOCK, m)
    branch = result.single_branch()
    assert branch.assignments == ({},)
    assert branch.intervals["a"].forced_value() == alt("β")
    assert branch.intervals["b"].forced_value() == alt("β")
    assert branch.intervals["c"].kind is Kind.FREE
    d = branch.intervals["d"]
    assert d.kind is Kind.RANGE
    assert d.inf.as_constant() == alt("β")
    assert d.sup.as_constant() == alt("α", "β")


def test_final_session_merges_branches():
    m = table_matrix(
        {
            "a": concrete("β"),
            "b": concrete("β"),
            "c": Interval(GREEK.empty, GREEK.full),
            "d": Interval(alt("β"), alt("α", "β")),
        }
    )
    result = solve_session(ALLY_BLOCK, m, enumeration_bound=4)
    branch = result.single_branch()
    assert branch.assignments == (
        {"d": alt("β")},
        {"d": alt("α", "β")},
    )
    for subject in "abd":
        interval = branch.intervals[subject]
        assert interval.sup == parse_expr("{β} + c", GREEK)
        assert interval.inf == parse_expr("c", GREEK)
    c = branch.intervals["c"]
    assert c.sup.is_one
    assert c.inf == parse_expr("{β}", GREEK)


def test_session_branches_split_when_outcomes_differ():
    # b sees d's choice directly, so the two d-branches disagree
    m = InfluenceMatrix(
        GREEK,
        "bd",
        {
            ("b", "d"): concrete("β"),
            ("d", "b"): Interval(alt("β"), alt("α", "β")),
        },
    )
    result = solve_session(meet_of([Var("b"), Var("d")]), m)
    assert len(result.branches) == 2
    assert [b.assignments for b in result.branches] == [
        ({"d": alt("β")},),
        ({"d": alt("α", "β")},),
    ]
    assert result.branches[0].intervals["b"].sup.as_constant() == alt("β")
    assert result.branches[1].intervals["b"].sup.as_constant() == alt("α", "β")


def test_oversized_interval_stays_symbolic():
    m = InfluenceMatrix(
        GREEK,
        "bd",
        {
            ("b", "d"): concrete("β"),
            ("d", "b"): Interval(GREEK.empty, GREEK.full),
        },
    )
    result = solve_session(meet_of([Var("b"), Var("d")]), m, enumeration_bound=4)
    branch = result.single_branch()
    assert branch.assignments == ({},)
    assert branch.intervals["b"].sup == parse_expr("d", GREEK)


def test_mixed_row_still_enumerates():
    # c exerts an interval on b but a fixed value on d
    m = InfluenceMatrix(
        GREEK,
        "bcd",
        {
            ("b", "c"): concrete("β"),
            ("b", "d"): concrete("β"),
            ("c", "b"): Interval(alt("β"), alt("α", "β")),
            ("c", "d"): concrete("γ"),
            ("d", "b"): concrete("β"),
            ("d", "c"): concrete("β"),
        },
    )
    result = solve_session(meet_of([Var("b"), Var("c"), Var("d")]), m)
    assert sum(len(b.assignments) for b in result.branches) == 2
    for branch in result.branches:
        for assignment in branch.assignments:
            assert set(assignment) == {"c"}


def test_conflicting_interval_row_stays_symbolic():
    m = InfluenceMatrix(
        GREEK,
        "bcd",
        {
            ("b", "c"): concrete("β"),
            ("b", "d"): concrete("β"),
            ("c", "b"): Interval(alt("β"), alt("α", "β")),
            ("c", "d"): Interval(GREEK.empty, alt("β")),
            ("d", "b"): concrete("β"),
            ("d", "c"): concrete("β"),
        },
    )
    result = solve_session(meet_of([Var("b"), Var("c"), Var("d")]), m)
    branch = result.single_branch()
    assert branch.assignments == ({},)
    assert "c" in branch.intervals["b"].sup.free_variables


def test_exclusion_vote_session():
    m = InfluenceMatrix.from_rows(
        BINARY,
        "abcd",
        {
            "a": SYMBOLIC,
            "b": SYMBOLIC,
            "c": Concrete(BINARY.full),
            "d": SYMBOLIC,
        },
    )
    result = solve_session(ALLY_BLOCK, m)
    branch = result.single_branch()
    for subject in "abd":
        assert branch.intervals[subject].forced_value() == BINARY.full
    c = branch.intervals["c"]
    assert c.kind is Kind.RANGE
    assert c.sup.is_one
    assert c.inf == parse_expr("a·b·d", BINARY)


def test_vote_session_with_zero_influence():
    m = InfluenceMatrix.from_rows(
        BINARY,
        "abcd",
        {
            "a": SYMBOLIC,
            "b": SYMBOLIC,
            "c": Concrete(BINARY.empty),
            "d": SYMBOLIC,
        },
    )
    branch = solve_session(ALLY_BLOCK, m).single_branch()
    for subject in "abd":
        assert branch.intervals[subject].inf.is_zero
        assert branch.intervals[subject].forced_value() != BINARY.full
    resolved = resolve_intervals(branch.intervals)
    assert all(iv.forced_value() != BINARY.full for iv in resolved.values())


def test_session_subject_mismatch():
    m = InfluenceMatrix.from_rows(GREEK, "ab", {"a": SYMBOLIC, "b": SYMBOLIC})
    with pytest.raises(UnknownSubject):
        solve_session(ALLY_BLOCK, m)


def test_guard_blowup_becomes_not_solvable():
    subjects = "abcdef"
    poly = meet_of([Var(s) for s in subjects])
    m = InfluenceMatrix.from_rows(GREEK, subjects, {s: SYMBOLIC for s in subjects})
    with pytest.raises(NotSolvable):
        solve_session(poly, m)


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_branch_count_is_product_of_interval_sizes(data):
    universe = ActionUniverse(["α", "β"])
    subjects = list("abc")
    rows = {}
    expected = 1
    for s in subjects:
        pick = data.draw(st.integers(0, 2), label=s)
        if pick == 0:
            rows[s] = SYMBOLIC
        elif pick == 1:
            rows[s] = Concrete(universe.from_bits(data.draw(st.integers(0, 3))))
        else:
            lo = universe.from_bits(data.draw(st.integers(0, 3)))
            hi = lo.join(universe.from_bits(data.draw(st.integers(0, 3))))
            rows[s] = Interval(lo, hi)
            expected *= Interval(lo, hi).size()
    m = InfluenceMatrix.from_rows(universe, subjects, rows)
    poly = join_of([meet_of([Var("a"), Var("b")]), Var("c")])
    result = solve_session(poly, m)
    assert sum(len(b.assignments) for b in result.branches) == expected


# -- resolution ------------------------------------------------------------

def test_resolution_chains_through_subjects():
    point = DecisionInterval.classify(
        "a", SymbolicExpr.constant(alt("β")), SymbolicExpr.constant(alt("β"))
    )
    dependent = DecisionInterval.classify(
        "b", SymbolicExpr.variable("a", GREEK), SymbolicExpr.variable("a", GREEK)
    )
    chained = DecisionInterval.classify(
        "c", SymbolicExpr.one(GREEK), SymbolicExpr.variable("b", GREEK)
    )
    resolved = resolve_intervals({"a": point, "b": dependent, "c": chained})
    assert resolved["b"].forced_value() == alt("β")
    assert resolved["c"].inf.as_constant() == alt("β")


def test_resolution_leaves_unforced_intervals_alone():
    free = DecisionInterval.classify(
        "a", SymbolicExpr.one(GREEK), SymbolicExpr.zero(GREEK)
    )
    other = DecisionInterval.classify(
        "b", SymbolicExpr.variable("a", GREEK), SymbolicExpr.zero(GREEK)
    )
    resolved = resolve_intervals({"a": free, "b": other})
    assert resolved == {"a": free, "b": other}


# -- diagonal form ---------------------------------------------------------

def test_diagonal_form_of_block_polynomial():
    assert render_diagonal_form(ALLY_BLOCK) == "\n".join(
        [
            "[a][b][d]",
            "[abd] + [c]",
            "[abd + c] = abd + c",
        ]
    )


def test_diagonal_form_of_single_subject():
    assert render_diagonal_form(Var("a")) == "[a] = a"


@given(polynomials())
@settings(max_examples=250, deadline=None)
def test_diagonal_fold_identity(poly):
    rendered = render_diagonal_form(poly)
    assert rendered.rsplit(" = ", 1)[1] == poly.render()
    assert rendered.splitlines()[-1].startswith(f"[{poly.render()}]")
