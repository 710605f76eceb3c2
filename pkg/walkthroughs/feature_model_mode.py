# # Classic pairwise sampling over a feature model
#
# With no source code at all, every feature literal becomes a universe entry.
# Pairwise coverage of that universe is the usual all-pairs criterion.

from pcsample import FeatureModel, preprocess, sample
from pcsample.coverage import classic_uncovered_pairs
from pcsample.io import format_configuration

names = ("CORE", "NET", "TFTP", "HTTP", "SSL", "DEBUG")
# NET requires CORE; TFTP and HTTP require NET; SSL requires HTTP
clauses = ((-2, 1), (-3, 2), (-4, 2), (-5, 4))
model = FeatureModel(names, clauses)

universe = preprocess([], model, mode="fm")
print(len(universe), "literal entries")

s = sample(universe, model, t=2, seed=3)
for config in s:
    print(format_configuration(config, model))

print("pairs left uncovered:", classic_uncovered_pairs(s, model))
