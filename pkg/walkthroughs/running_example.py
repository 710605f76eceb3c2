# # From #ifdefs to a pairwise sample
#
# A small TFTP fragment guards its code with five features. We pull out the
# presence conditions, build the t-wise universe, sample it, and compare the
# result against a hand-made sample.

from pathlib import Path

from pcsample import coverage, extract_tree, fault_covered, FaultSpec, preprocess, sample
from pcsample.transform import to_pc
from pcsample.io import format_configuration, parse_sample_csv, read_dimacs

FIX = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# ## Extraction

result = extract_tree(FIX / "tftp")
for rec in result.records:
    print(f"{rec.path}:{rec.line}\t{rec.formula}")

# ## The universe
#
# Distinct conditions plus their complements. The always-true guard drops out.

model = read_dimacs(FIX / "running_example" / "tftp5.dimacs")
universe = preprocess([r.formula for r in result.records], model)
for i, entry in enumerate(universe.entries):
    print(f"u{i}: {entry.format(model)}")

# ## Sampling

s = sample(universe, model, t=2, seed=0)
print(f"\n{len(s)} configurations")
for config in s:
    print(" ", format_configuration(config, model))

report = coverage(s, universe, model, 2)
print(report.to_text())

# ## A hand-made sample misses two interactions

incling = parse_sample_csv((FIX / "running_example" / "incling.csv").read_text(), model)
other = coverage(incling, universe, model, 2)
print(other.to_text())
for pc in other.uncovered:
    print("  uncovered:", pc.format(model))

# The undeclared-variable bug needs BLOCKSIZE off and DEBUG on together.

fault = FaultSpec("blksize", to_pc("!TFTP_BLOCKSIZE && TFTP_GET && TFTP && TFTP_DEBUG"
                  " || !TFTP_BLOCKSIZE && TFTP_PUT && TFTP && TFTP_DEBUG", model))
print("sampler finds it:", fault_covered(s, fault))
print("hand sample finds it:", fault_covered(incling, fault))
