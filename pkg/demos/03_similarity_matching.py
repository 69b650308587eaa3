"""Match characters by the Ruzicka similarity of their neighbourhoods.

Shows the static similarity matrix with the mutual-best rule, the sequential
variant that votes across dynamic slices, and the self-vs-alter similarity
gaps used to diagnose individual characters.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from storyworld import build_corpus

import numpy as np

from storymatch import (
    INSTANT,
    UnitKind,
    build_dynamic,
    build_static,
    evaluate_matching,
    mutual_best_match,
    neighborhood_similarity,
    ruzicka,
    select_characters,
    self_alter_gap,
    sequential_match,
)

print("== the similarity itself ==")
print("ruzicka((1,2), (2,1)) =", ruzicka([1, 2], [2, 1]))
print("identical vectors ->", ruzicka([3, 1], [3, 1]))
print("disjoint supports ->", ruzicka([1, 0], [0, 1]))

corpus = build_corpus()
period = corpus.period("U2")
common = select_characters(corpus, "common", ["novels", "comics"], period)

print("\n== static neighbourhood similarity, novels vs comics ==")
G1 = build_static(corpus, "novels", period, common)
G2 = build_static(corpus, "comics", period, common)
sim = neighborhood_similarity(G1, G2, common)
header = " ".join(f"{c[:4]:>5s}" for c in sim.cols)
print(f"{'':6s}{header}")
for i, row_name in enumerate(sim.rows):
    cells = " ".join(f"{v:5.2f}" for v in sim.values[i])
    print(f"{row_name[:5]:6s}{cells}")

matching = mutual_best_match(sim)
print(f"mutual-best matches: {matching.pairs}")
print(f"accuracy over the set: {100 * evaluate_matching(matching, universe=common):.2f}%")

print("\n== sequential matching over chapter slices ==")
dyn1 = build_dynamic(corpus, "novels", UnitKind.CHAPTER, period, common, INSTANT)
dyn2 = build_dynamic(corpus, "comics", UnitKind.CHAPTER, period, common, INSTANT)
seq = sequential_match(dyn1, dyn2, common)
for a in sorted(seq.pairs):
    print(f"{a} -> {seq.pairs[a]} ({int(seq.confidence[a])} of {len(dyn1)} slices agree)")

print("\n== self-similarity vs the best alternative ==")
gaps = self_alter_gap(sim)
for name, gap in sorted(gaps.items(), key=lambda kv: kv[1]):
    verdict = "correct" if gap > 0 else "confusable"
    print(f"{name:6s} gap {gap:+.2f} ({verdict})")

print("\nmost confusable pair:",
      min(gaps, key=gaps.get), "->",
      sim.cols[int(np.argsort(sim.values[sim.rows.index(min(gaps, key=gaps.get))])[-1])])
