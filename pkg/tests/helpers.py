"""Random generators shared by the property tests"""
from fractions import Fraction

F = Fraction


def random_rational(rng, low=1, high=4, denominators=(1, 2, 3, 4, 5)):
    """Positive rational in [low/den, high] with a small denominator"""
    den = rng.choice(denominators)
    return F(rng.randint(low, high * den), den)


def random_measure(rng, atoms: int):
    """Probability measure with `atoms` distinct atoms in the open quadrant"""
    from shifts.berger import AtomicMeasure
    points = set()
    while len(points) < atoms:
        points.add((random_rational(rng), random_rational(rng)))
    weights = [rng.randint(1, 5) for _ in range(atoms)]
    total = sum(weights)
    return AtomicMeasure.of(*((s, t, F(w, total)) for (s, t), w in zip(sorted(points), weights)))


def random_diagram(rng, window=(5, 5)):
    """A commuting diagram from one of the generator families, tail-ruled"""
    from shifts.berger import build_counterexample, remark_measure, shift_from_measure, theorem4_measure
    from shifts.lattice import generate_constant, generate_flat_above_row_zero, generate_TS

    family = rng.choice(["constant", "flat", "ts", "measure1", "measure2", "thm4", "remark", "thm3"])
    if family == "constant":
        return generate_constant(random_rational(rng), random_rational(rng), window)
    if family == "flat":
        C = random_rational(rng, low=2)
        a = C * F(rng.randint(1, 9), 10)
        # y00 ≤ C − a keeps the row-0 recurrence inside (0, C); equality makes it constant
        y00 = (C - a) * F(rng.randint(1, 10), 10)
        return generate_flat_above_row_zero(a, y00, C, window)
    if family == "ts":
        length = rng.randint(1, window[0] + window[1] - 1)
        if rng.random() < 0.3:
            row = [random_rational(rng)] * length
        else:
            row = sorted(random_rational(rng) for _ in range(length))
        return generate_TS(row, random_rational(rng), window, extend_constant=True)
    if family == "measure1":
        return shift_from_measure(random_measure(rng, 1), window)
    if family == "measure2":
        return shift_from_measure(random_measure(rng, 2), window)
    if family == "thm4":
        return shift_from_measure(theorem4_measure(F(rng.randint(1, 9), 10), random_rational(rng)), window)
    if family == "remark":
        return shift_from_measure(remark_measure(F(rng.randint(1, 4), 10)), window)
    s = F(rng.randint(0, 3), 10)
    return shift_from_measure(build_counterexample(s, s + F(rng.randint(1, 3), 10)), window)


TWO_ATOM_FAMILIES = ("free", "base", "pow21", "pow12", "counterexample", "remark", "thm4")


def random_two_atom_measure(rng):
    """Two atoms with s < u and t ≠ v, often placed on one of the sphericality curves"""
    from core.errors import InputError
    from shifts.berger import (
        AtomicMeasure, build_counterexample, remark_measure, theorem4_measure, two_atom_conditions,
    )
    while True:
        family = rng.choice(TWO_ATOM_FAMILIES)
        s, u = sorted((random_rational(rng), random_rational(rng)))
        t, v = random_rational(rng), random_rational(rng)
        rho = F(rng.randint(1, 9), 10)
        try:
            if family == "counterexample":
                a = F(rng.randint(1, 3), 10)
                mu = build_counterexample(a, a + F(rng.randint(1, 4), 10))
            elif family == "remark":
                mu = remark_measure(F(rng.randint(1, 4), 10), rho)
            elif family == "thm4":
                mu = theorem4_measure(rho, random_rational(rng))
            else:
                if family == "base":
                    t = v + u - s
                elif family == "pow21":
                    t = u * u + v - s * s
                elif family == "pow12":
                    t, v = max(t, v), min(t, v)
                    u = s + t * t - v * v
                mu = AtomicMeasure.of((s, t, rho), (u, v, 1 - rho))
            two_atom_conditions(mu)
        except InputError:
            continue
        return mu
