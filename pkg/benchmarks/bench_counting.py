import math
import time
import timeit

from pyorbits.counting import CountCache, fixed_points_exact, fixed_points_float, mertens
from pyorbits.lattice import enumerate_sublattices, superlattices
from pyorbits.measures import growth_rate
from pyorbits.moebius import MoebiusCache, moebius
from pyorbits.poly import parse_poly


def run_benchmark():
    f = parse_poly("3+x+y")

    st = time.monotonic()
    lattices = [lattice for n in range(1, 201) for lattice in enumerate_sublattices(n)]
    pairs = sum(len(superlattices(lattice)) for lattice in lattices)
    print(
        f"Enumerated {len(lattices)} lattices with {pairs} superlattice pairs: "
        f"{time.monotonic() - st:.6f} seconds"
    )

    cache = MoebiusCache(store_raw=False)
    st = time.monotonic()
    for lattice in lattices:
        for upper in superlattices(lattice):
            moebius(upper, lattice, cache)
    print(
        f"Möbius values for all pairs (canonical table size: {len(cache)}): "
        f"{time.monotonic() - st:.6f} seconds"
    )

    n = 5
    sample = enumerate_sublattices(48)
    ttime = timeit.timeit(lambda: [fixed_points_exact(f, lattice) for lattice in sample], number=n)
    print(f"Determinant path (lattices: {len(sample)}, invocations: {n}): {ttime:.6f} seconds")

    ttime = timeit.timeit(lambda: [fixed_points_float(f, lattice) for lattice in sample], number=n)
    print(f"Extended precision path (lattices: {len(sample)}, invocations: {n}): {ttime:.6f} seconds")

    st = time.monotonic()
    growth = growth_rate(f)
    print(f"Growth rate search (g = {growth.g:.12g}): {time.monotonic() - st:.6f} seconds")

    for exact, max_index in ((True, 60), (False, 300)):
        st = time.monotonic()
        series = mertens(f, max_index, math.log(4), growth=growth, exact=exact, cache=CountCache(f))
        print(
            f"Orbit sums up to {max_index} ({'exact' if exact else 'float'}, "
            f"M = {series[max_index].mertens:.6f}): {time.monotonic() - st:.6f} seconds"
        )


if __name__ == "__main__":
    run_benchmark()
