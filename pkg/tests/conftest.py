from fractions import Fraction

from hypothesis import strategies as st

from divknap.model import GeqPoint, Instance, IntervalPartition, IntPoint, LeqPoint, SetKind


@st.composite
def instances(draw, max_n=4, max_m=3, max_b=200, min_m=0):
    n = draw(st.integers(1, max_n))
    a = [draw(st.integers(2, 5))]
    for _ in range(n - 1):
        a.append(a[-1] * draw(st.integers(2, 4)))
    m = draw(st.integers(min_m, max_m))
    u = draw(st.lists(st.integers(1, 10), min_size=m, max_size=m))
    b = draw(st.integers(1, max_b))
    return Instance(tuple(a), tuple(u), b)


fractions = st.builds(Fraction, st.integers(0, 60), st.integers(1, 12))


@st.composite
def points(draw, inst, which):
    """Point of the LP relaxation: free draws, then the slack repaired."""
    which = SetKind(which)
    x = [draw(fractions) / inst.a[i] for i in range(inst.n)]
    cont = [min(draw(fractions), Fraction(u)) for u in inst.u]
    weighted = sum(a * xi for a, xi in zip(inst.a, x))
    extra = draw(st.sampled_from([Fraction(0), Fraction(0), Fraction(1, 3), Fraction(2)]))
    if which is SetKind.Z:
        return IntPoint(max(Fraction(0), inst.b - weighted) + extra, x)
    if which is SetKind.GEQ:
        return GeqPoint(x, max(Fraction(0), inst.b - weighted - sum(cont)) + extra, cont)
    return LeqPoint(x, max(Fraction(0), weighted - inst.b - sum(cont)) + extra, cont)


@st.composite
def partitions(draw, n):
    inner = draw(st.sets(st.integers(1, n), max_size=n)) if n else set()
    return IntervalPartition((0,) + tuple(sorted(inner)), n)


def swap_configurations(start_seed=0):
    """Yield ``(seed, inst, pt, C, j_plus, j_minus)`` meeting the exchange precondition.

    Scans generator seeds upward and keeps every ``(C, j+, j-)`` with a
    violated ``(Pi, C)`` cut and ``s_{j+}/u_{j+} <= s_{j-}/u_{j-}``.
    """
    import itertools

    from divknap.geq import separate_for_subset
    from divknap.oracle import EnumerationBudget, gen_instance, gen_point

    seed = start_seed
    while True:
        inst = gen_instance(seed, EnumerationBudget(4, 3), SetKind.GEQ)
        if inst.m >= 2:
            pt = gen_point(seed, inst, SetKind.GEQ)
            for k in range(1, inst.m + 1):
                for C in itertools.combinations(range(inst.m), k):
                    if inst.residual_capacity(C) <= 0 or separate_for_subset(inst, pt, C).is_inside:
                        continue
                    for jm in C:
                        for jp in range(inst.m):
                            if jp not in C and pt.s[jp] * inst.u[jm] <= pt.s[jm] * inst.u[jp]:
                                yield seed, inst, pt, C, jp, jm
        seed += 1


def random_leq_generator(rng, max_n=5, max_m=3):
    """Random ``(inst, C, Pi)`` admissible for the <=-partition inequality, or ``None``.

    Admissible means: some weight does not divide ``B(C)``, the second
    block starts at some ``q >= g`` and the last block's weight fits in
    ``B(C)``.
    """
    from divknap.leq import first_nondivisor, leq_capacity

    n = rng.randint(1, max_n)
    a = [rng.randint(2, 5)]
    for _ in range(n - 1):
        a.append(a[-1] * rng.randint(2, 4))
    u = [rng.randint(1, 10) for _ in range(rng.randint(0, max_m))]
    inst = Instance(tuple(a), tuple(u), rng.randint(1, 200))
    C = tuple(j for j in range(inst.m) if rng.random() < 0.5)
    big = leq_capacity(inst, C)
    g = first_nondivisor(inst, big)
    if g is None:
        return None
    fits = [i for i in range(g, n + 1) if inst.weight(i) <= big]
    if not fits:
        return None
    q = rng.choice(fits)
    rest = [i for i in range(q + 1, n + 1) if rng.random() < 0.5 and inst.weight(i) <= big]
    return inst, C, IntervalPartition((0, q, *rest), n)
