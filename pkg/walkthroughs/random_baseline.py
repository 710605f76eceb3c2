# # How far does random sampling get?
#
# Same running example, same budget, drawn uniformly from shuffled SAT runs.

from pathlib import Path

from pcsample import coverage, preprocess, random_sample, sample
from pcsample.io import read_dimacs
from pcsample.extract import extract_tree

FIX = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
model = read_dimacs(FIX / "running_example" / "tftp5.dimacs")
universe = preprocess([r.formula for r in extract_tree(FIX / "tftp").records], model)

greedy = sample(universe, model, 2)
n = len(greedy)
print(f"greedy: {n} configurations, ratio {float(coverage(greedy, universe, model, 2).ratio):.3f}")

ratios = []
for seed in range(20):
    r = random_sample(model, n, seed=seed)
    ratios.append(float(coverage(r, universe, model, 2).ratio))
print(f"random (n={n}, 20 seeds): min {min(ratios):.3f}  mean {sum(ratios) / len(ratios):.3f}"
      f"  max {max(ratios):.3f}")
