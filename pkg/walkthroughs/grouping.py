# # Per-file interactions
#
# Large code bases make the full cross product of conditions expensive. Grouping
# restricts interactions to conditions that occur in the same file.

from pcsample import coverage, extract_text, FeatureModel, preprocess, sample, sample_grouped

net = """
#ifdef NET
int sock;
#ifdef IPV6
int v6;
#endif
#endif
"""
ui = """
#if defined(GUI) && !defined(TTY)
void draw(void);
#elif TTY
void print(void);
#endif
"""

records = extract_text(net, "net.c")[0] + extract_text(ui, "ui.c")[0]
model = FeatureModel(("NET", "IPV6", "GUI", "TTY"), ((-2, 1),))

universe = preprocess([r.formula for r in records], model, grouping=[r.path for r in records])
print("groups:", universe.groups)

whole = sample(universe, model, 2)
local = sample_grouped(universe, model, 2)
print("whole-universe sample:", len(whole), "configurations")
print("per-file sample:", len(local), "configurations")
print("per-file sample, global ratio:", coverage(local, universe, model, 2).ratio)
