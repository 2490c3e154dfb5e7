"""How far from monotone is a set function?

The monotonicity ratio m is the largest number with m*f(S) <= f(T) for every
nested pair S <= T; m = 1 means monotone, m = 0 means adding elements can
wipe out all value. This script computes m exactly (brute force) for a few
classic functions and prints the witnessing pairs.
"""

from monoratio import (GroundSet, SetFunctionOracle, exact_monotonicity_ratio,
                       exact_weak_monotonicity_ratio, ids_of, image_objective,
                       inner_product_similarity, movie_objective,
                       random_feature_matrix)


def show(name, f):
    rep = exact_monotonicity_ratio(f)
    print(f"{name:28s} m = {rep.ratio:.4f}   witness S={ids_of(rep.witness_S)} "
          f"T={ids_of(rep.witness_T)}   ({rep.eval_count} oracle calls)")


# a modular (additive) function is monotone: m = 1
weights = [3.0, 1.0, 2.0]
modular = SetFunctionOracle(GroundSet(3),
                            lambda m: sum(weights[u] for u in ids_of(m)))
show("modular", modular)

# the directed cut of a single edge loses everything: m = 0
cut = SetFunctionOracle(GroundSet(2), lambda m: 1.0 if m == 0b01 else 0.0)
show("directed cut edge", cut)

# a two-element blend with a dial: m(S) = 0.25*1[S nonempty] + 0.75*(|S| mod 2)
blend = SetFunctionOracle(
    GroundSet(2), lambda m: 0.25 * (m != 0) + 0.75 * (m.bit_count() % 2))
show("blend (dial = 0.25)", blend)

# the movie recommendation objective: provably monotone up to lambda = 1/2,
# and 2(1-lambda)-monotone beyond
feats = random_feature_matrix(8, 5, seed=0)
sim = inner_product_similarity(feats)
for lam in (0.3, 0.6, 0.9):
    show(f"movie objective lam={lam}", movie_objective(sim, lam))

# the image summary objective has a terrible global ratio, but restricted to
# small feasible sets its *weak* ratio stays useful: >= 1 - 2k/n
img = image_objective(sim)
for k in (1, 2, 3):
    rep = exact_weak_monotonicity_ratio(img, lambda m: m.bit_count() <= k)
    print(f"image objective, |S| <= {k}:  weak m = {rep.ratio:.4f}  "
          f"(lower bound 1 - 2k/n = {1 - 2 * k / 8:.3f})")
