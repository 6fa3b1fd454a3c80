"""
随机性质测试

每个测试用固定种子的 random.Random 生成小模型，
与逐步模拟、保存完整历史的朴素实现逐状态比较。
"""

import random

import numpy as np
import pytest

from core.matrices import MatrixKind, add_matrices
from core.spaces import ConceptSpace
from core.states import RawVector, StateVector, mul_state_matrix, threshold_update
from maps.fcm import hidden_pattern, special_fcm
from maps.fcrm import StateBivector, bihidden_pattern, build_bimodel
from maps.frm import Side, hidden_pair
from maps.linguistic import (
    CompositionOperator,
    FlcmModel,
    FlrmModel,
    LinguisticChain,
    LinguisticMatrix,
    LinguisticState,
    compose_raw,
)
from modelio import list_fixtures, load_fixture, parse_model, serialize_model
from tests.conftest import make_fcm, make_frm


OPERATORS = {
    "max-min": (max, min),
    "min-min": (min, min),
    "max-max": (max, max),
    "min-max": (min, max),
}


def first_repeat(start, step):
    """朴素的重复检测：保存完整历史，线性查找"""
    history = [start]
    while True:
        nxt = step(history[-1])
        if nxt in history:
            return history, history.index(nxt)
        history.append(nxt)


def random_signed_rows(rng, n, m, zero_diagonal=False):
    rows = [[rng.choice((-1, 0, 0, 1)) for _ in range(m)] for _ in range(n)]
    if zero_diagonal:
        for i in range(n):
            rows[i][i] = 0
    return rows


def random_subset(rng, n):
    picked = [i for i in range(n) if rng.random() < 0.3]
    return picked or [rng.randrange(n)]


# ----------------------------------------------------------------------
# 清晰模型
# ----------------------------------------------------------------------

def naive_fcm(rows, clamped):
    n = len(rows)

    def step(x):
        return tuple(
            1 if i in clamped or sum(x[k] * rows[k][i] for k in range(n)) >= 1 else 0
            for i in range(n)
        )

    start = tuple(1 if i in clamped else 0 for i in range(n))
    return first_repeat(start, step)


def test_fcm_matches_naive_simulation():
    rng = random.Random(20240611)
    for _ in range(1000):
        n = rng.randint(1, 6)
        labels = tuple(f"C{i}" for i in range(n))
        rows = random_signed_rows(rng, n, n, zero_diagonal=True)
        model = make_fcm(labels, rows)
        on = random_subset(rng, n)

        pattern = hidden_pattern(model, model.seed(*(labels[i] for i in on)))
        history, entry = naive_fcm(rows, set(on))

        assert [s.values for s in pattern.trace] == history
        assert pattern.cycle_entry == entry
        assert pattern.iterations <= 2 ** n
        # 钳制坐标在每一步都保持开启
        assert all(s.values[i] == 1 for s in pattern.trace for i in on)


def naive_frm(rows, side, seed):
    n, m = len(rows), len(rows[0])

    def forward(x):
        return [sum(x[i] * rows[i][j] for i in range(n)) for j in range(m)]

    def backward(y):
        return [sum(y[j] * rows[i][j] for j in range(m)) for i in range(n)]

    def threshold(scores, clamped):
        return tuple(1 if k in clamped or v >= 1 else 0 for k, v in enumerate(scores))

    if side is Side.DOMAIN:
        domain_clamps, range_clamps = set(seed), set()
        start = threshold([0] * n, domain_clamps)
    else:
        domain_clamps, range_clamps = set(), set(seed)
        start = threshold(backward([1 if j in seed else 0 for j in range(m)]), set())

    def produce(x):
        return threshold(forward(x), range_clamps)

    history, entry = first_repeat(start, lambda x: threshold(backward(produce(x)), domain_clamps))
    return history, [produce(x) for x in history], entry


def test_frm_matches_naive_simulation():
    rng = random.Random(7)
    for _ in range(1000):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        domain = tuple(f"D{i}" for i in range(n))
        range_ = tuple(f"R{j}" for j in range(m))
        rows = random_signed_rows(rng, n, m)
        model = make_frm(domain, range_, rows)

        side = rng.choice((Side.DOMAIN, Side.RANGE))
        if side is Side.DOMAIN:
            on = random_subset(rng, n)
            seed = model.domain_seed(*(domain[i] for i in on))
        else:
            on = random_subset(rng, m)
            seed = model.range_seed(*(range_[j] for j in on))

        result = hidden_pair(model, seed)
        domain_history, range_history, entry = naive_frm(rows, side, set(on))

        assert [x.values for x in result.domain_pattern.trace] == domain_history
        assert [y.values for y in result.range_pattern.trace] == range_history
        assert result.domain_pattern.cycle_entry == entry


def test_fcrm_factorizes_into_its_components():
    rng = random.Random(99)
    for _ in range(200):
        n, p, m = rng.randint(1, 5), rng.randint(1, 4), rng.randint(1, 4)
        fcm = make_fcm(tuple(f"C{i}" for i in range(n)), random_signed_rows(rng, n, n, True))
        frm = make_frm(
            tuple(f"D{i}" for i in range(p)),
            tuple(f"R{j}" for j in range(m)),
            random_signed_rows(rng, p, m),
        )
        bimodel = build_bimodel(fcm, frm)

        side = rng.choice((Side.DOMAIN, Side.RANGE))
        space = frm.domain if side is Side.DOMAIN else frm.range
        fcm_labels = [fcm.space.label(i) for i in random_subset(rng, n)]
        frm_labels = [space.label(i) for i in random_subset(rng, space.dimension)]
        seed = StateBivector.from_labels(bimodel, fcm_labels, frm_labels, side)

        joint = bihidden_pattern(bimodel, seed)
        alone_fcm = hidden_pattern(fcm, seed.first)
        alone_frm = hidden_pair(frm, seed.second)

        assert joint.first.trace == alone_fcm.trace
        assert joint.second.domain_pattern.trace == alone_frm.domain_pattern.trace
        assert joint.second.range_pattern.trace == alone_frm.range_pattern.trace
        assert joint.iterations == max(alone_fcm.iterations, alone_frm.iterations)


def test_special_fcm_majority_rule():
    rng = random.Random(3)
    labels = ("a", "b", "c")
    for _ in range(200):
        p = rng.randint(1, 6)
        inputs = [
            [[0 if i == j else rng.randint(0, 1) for j in range(3)] for i in range(3)]
            for _ in range(p)
        ]
        special = special_fcm([make_fcm(labels, rows, MatrixKind.POSITIVE) for rows in inputs])
        for i in range(3):
            for j in range(3):
                votes = sum(rows[i][j] for rows in inputs)
                assert special.matrix.entries[i, j] == (1 if 2 * votes >= p else 0)


def test_special_fcm_ignores_input_order():
    rng = random.Random(31)
    labels = ("a", "b", "c", "d")
    for _ in range(200):
        models = [
            make_fcm(
                labels,
                [[0 if i == j else rng.randint(0, 1) for j in range(4)] for i in range(4)],
                MatrixKind.POSITIVE,
            )
            for _ in range(rng.randint(1, 6))
        ]
        shuffled = models[:]
        rng.shuffle(shuffled)
        assert special_fcm(shuffled).matrix == special_fcm(models).matrix


def test_threshold_of_a_state_is_the_state():
    rng = random.Random(41)
    for _ in range(1000):
        n = rng.randint(1, 8)
        space = ConceptSpace(tuple(f"C{i}" for i in range(n)))
        values = tuple(rng.randint(0, 1) for _ in range(n))
        clamped = frozenset(i for i in range(n) if values[i] and rng.random() < 0.5)
        state = StateVector(space, values, clamped)
        assert threshold_update(RawVector(space, values), clamped) == state


def test_larger_clamp_set_never_switches_a_node_off():
    rng = random.Random(43)
    for _ in range(1000):
        n = rng.randint(1, 8)
        space = ConceptSpace(tuple(f"C{i}" for i in range(n)))
        raw = RawVector(space, tuple(rng.randint(-3, 3) for _ in range(n)))
        small = set(random_subset(rng, n))
        large = small | set(random_subset(rng, n))
        before = threshold_update(raw, small).values
        after = threshold_update(raw, large).values
        assert all(b <= a for b, a in zip(before, after))


def test_mul_state_matrix_is_additive_over_disjoint_states():
    rng = random.Random(47)
    for _ in range(1000):
        n = rng.randint(1, 7)
        labels = tuple(f"C{i}" for i in range(n))
        model = make_fcm(labels, random_signed_rows(rng, n, n, zero_diagonal=True))
        space = model.space
        owner = [rng.choice((0, 1, 2)) for _ in range(n)]
        first = StateVector(space, tuple(int(o == 1) for o in owner))
        second = StateVector(space, tuple(int(o == 2) for o in owner))
        union = StateVector(space, tuple(int(o > 0) for o in owner))

        a = mul_state_matrix(first, model.matrix).scores
        b = mul_state_matrix(second, model.matrix).scores
        assert mul_state_matrix(union, model.matrix).scores == tuple(x + y for x, y in zip(a, b))
        assert mul_state_matrix(StateVector.zeros(space), model.matrix).scores == (0,) * n


def test_add_matrices_is_commutative_and_associative():
    rng = random.Random(53)
    for _ in range(300):
        n = rng.randint(1, 6)
        labels = tuple(f"C{i}" for i in range(n))
        a, b, c = (
            make_fcm(labels, random_signed_rows(rng, n, n, zero_diagonal=True)).matrix
            for _ in range(3)
        )
        assert add_matrices([a, b]) == add_matrices([b, a])
        left = add_matrices([add_matrices([a, b]), c])
        right = add_matrices([a, add_matrices([b, c])])
        assert left == right == add_matrices([a, b, c])


def test_positive_map_fixed_point_dominates_seed():
    rng = random.Random(59)
    for _ in range(500):
        n = rng.randint(1, 7)
        labels = tuple(f"C{i}" for i in range(n))
        rows = [[0 if i == j else int(rng.random() < 0.3) for j in range(n)] for i in range(n)]
        model = make_fcm(labels, rows, MatrixKind.POSITIVE)
        small = random_subset(rng, n)
        large = sorted(set(small) | set(random_subset(rng, n)))

        seed = model.seed(*(labels[i] for i in small))
        pattern = hidden_pattern(model, seed)
        wider = hidden_pattern(model, model.seed(*(labels[i] for i in large)))

        # 正连接矩阵上迭代单调不减，必然收敛到不动点
        assert pattern.is_fixed_point and wider.is_fixed_point
        assert all(s <= f for s, f in zip(seed.values, pattern.final_state.values))
        assert all(f <= w for f, w in zip(pattern.final_state.values, wider.final_state.values))


# ----------------------------------------------------------------------
# 语言模型
# ----------------------------------------------------------------------

def random_chain(rng):
    size = rng.randint(2, 5)
    return LinguisticChain(("0",) + tuple(f"t{k}" for k in range(1, size)))


def random_positions(rng, chain, n, m):
    return [[rng.randrange(chain.size) if rng.random() < 0.6 else 0 for _ in range(m)] for _ in range(n)]


def combine(op, vector, rows, transpose=False):
    outer, inner = OPERATORS[op]
    if transpose:
        return tuple(
            outer(inner(vector[j], rows[i][j]) for j in range(len(vector))) for i in range(len(rows))
        )
    return tuple(
        outer(inner(vector[i], rows[i][j]) for i in range(len(vector))) for j in range(len(rows[0]))
    )


def clamp(values, seed):
    return tuple(max(v, s) for v, s in zip(values, seed))


def random_seed_positions(rng, chain, n):
    seed = [0] * n
    for i in random_subset(rng, n):
        seed[i] = rng.randrange(1, chain.size)
    return seed


def test_flcm_matches_naive_simulation():
    rng = random.Random(424242)
    for _ in range(1000):
        chain = random_chain(rng)
        n = rng.randint(1, 4)
        space = ConceptSpace(tuple(f"P{i}" for i in range(n)))
        rows = random_positions(rng, chain, n, n)
        model = FlcmModel(
            LinguisticMatrix(chain, space, space, np.array(rows, dtype=np.int64)),
            allow_diagonal=True,
        )
        op = rng.choice(list(OPERATORS))
        seed = random_seed_positions(rng, chain, n)

        pattern = model.solve(LinguisticState.from_positions(space, chain, seed).as_seed(), operator=op)
        history, entry = first_repeat(tuple(seed), lambda x: clamp(combine(op, x, rows), seed))

        assert [tuple(int(v) for v in s.positions()) for s in pattern.trace] == history
        assert pattern.cycle_entry == entry


def test_flrm_matches_naive_simulation():
    rng = random.Random(5150)
    for _ in range(500):
        chain = random_chain(rng)
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        domain = ConceptSpace(tuple(f"S{i}" for i in range(n)))
        range_ = ConceptSpace(tuple(f"T{j}" for j in range(m)))
        rows = random_positions(rng, chain, n, m)
        model = FlrmModel(LinguisticMatrix(chain, domain, range_, np.array(rows, dtype=np.int64)))
        op = rng.choice(list(OPERATORS))

        zero_n, zero_m = (0,) * n, (0,) * m
        if rng.random() < 0.5:
            seed = random_seed_positions(rng, chain, n)
            state = LinguisticState.from_positions(domain, chain, seed).as_seed()
            domain_seed, range_seed = tuple(seed), zero_m
            start = tuple(seed)
        else:
            seed = random_seed_positions(rng, chain, m)
            state = LinguisticState.from_positions(range_, chain, seed).as_seed()
            domain_seed, range_seed = zero_n, tuple(seed)
            start = combine(op, seed, rows, transpose=True)

        def produce(x):
            return clamp(combine(op, x, rows), range_seed)

        history, entry = first_repeat(
            start, lambda x: clamp(combine(op, produce(x), rows, transpose=True), domain_seed)
        )
        result = model.solve(state, operator=op)

        assert [tuple(int(v) for v in x.positions()) for x in result.domain_pattern.trace] == history
        assert [tuple(int(v) for v in y.positions()) for y in result.range_pattern.trace] == [
            produce(x) for x in history
        ]
        assert result.domain_pattern.cycle_entry == entry


def test_operator_ordering():
    rng = random.Random(11)
    for _ in range(1000):
        chain = random_chain(rng)
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        rows_space = ConceptSpace(tuple(f"a{i}" for i in range(n)))
        cols_space = ConceptSpace(tuple(f"b{j}" for j in range(m)))
        matrix = LinguisticMatrix(
            chain, rows_space, cols_space, np.array(random_positions(rng, chain, n, m), dtype=np.int64)
        )
        state = LinguisticState.from_positions(
            rows_space, chain, [rng.randrange(chain.size) for _ in range(n)]
        )

        out = {op.value: compose_raw(state, matrix, op).positions() for op in CompositionOperator}
        assert (out["min-min"] <= out["min-max"]).all()
        assert (out["min-max"] <= out["max-max"]).all()
        assert (out["min-min"] <= out["max-min"]).all()
        assert (out["max-min"] <= out["max-max"]).all()


def test_max_min_is_monotone_in_the_seed():
    rng = random.Random(61)
    for _ in range(500):
        chain = random_chain(rng)
        n = rng.randint(1, 4)
        space = ConceptSpace(tuple(f"P{i}" for i in range(n)))
        model = FlcmModel(
            LinguisticMatrix(chain, space, space, np.array(random_positions(rng, chain, n, n), dtype=np.int64)),
            allow_diagonal=True,
        )
        seed = random_seed_positions(rng, chain, n)
        raised = seed[:]
        k = rng.randrange(n)
        raised[k] = rng.randrange(seed[k], chain.size)

        low = LinguisticState.from_positions(space, chain, seed).as_seed()
        high = LinguisticState.from_positions(space, chain, raised).as_seed()
        step_low = compose_raw(low, model.matrix, "max-min").positions()
        step_high = compose_raw(high, model.matrix, "max-min").positions()
        assert (step_low <= step_high).all()

        fixed_low = model.solve(low, operator="max-min")
        fixed_high = model.solve(high, operator="max-min")
        assert fixed_low.is_fixed_point and fixed_high.is_fixed_point
        assert (fixed_low.final_state.positions() <= fixed_high.final_state.positions()).all()


# ----------------------------------------------------------------------
# 序列化
# ----------------------------------------------------------------------

@pytest.mark.parametrize("info", list_fixtures(), ids=lambda info: info.fixture_id)
def test_serialization_is_stable(info):
    text = serialize_model(load_fixture(info.fixture_id))
    assert serialize_model(parse_model(text)) == text


def test_random_models_round_trip():
    rng = random.Random(2718)
    for _ in range(200):
        n = rng.randint(1, 6)
        labels = tuple(f"C{i}" for i in range(n))
        kind = rng.choice(list(MatrixKind))
        entries = {
            MatrixKind.SIMPLE: (-1, 0, 1),
            MatrixKind.POSITIVE: (0, 1),
            MatrixKind.COMBINED: tuple(range(-20, 21)),
        }[kind]
        rows = [[rng.choice(entries) for _ in range(n)] for _ in range(n)]
        model = make_fcm(labels, rows, kind, allow_diagonal=kind is not MatrixKind.COMBINED)
        assert parse_model(serialize_model(model)).model == model
