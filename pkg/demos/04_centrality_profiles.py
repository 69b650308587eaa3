"""Profile characters by centrality and compare adaptations through clusters.

Each character becomes a point in an 8-metric space (degree, strength, and
both variants of betweenness, closeness, eigenvector centrality). Profiles
are z-scored, correlated, clustered with a silhouette-chosen cut, and the
partitions of different adaptations are compared with the adjusted Rand
index.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from storyworld import build_corpus

from storymatch import (
    ari,
    build_static,
    cluster_profiles,
    compute_profiles,
    select_characters,
    spearman_matrix,
)
from storymatch.centrality import METRICS

corpus = build_corpus()
period = corpus.period("U2")
media = ["novels", "comics", "tvshow"]
common = select_characters(corpus, "common", media, period)
print(f"profiling {len(common)} common characters: {common}")

partitions = {}
for medium in media:
    network = build_static(corpus, medium, period, common, include_isolates=True)
    profiles = compute_profiles(network, common)

    print(f"\n== {medium}: z-scored profiles ==")
    print(f"{'':6s}" + " ".join(f"{m[:7]:>8s}" for m in METRICS))
    for i, name in enumerate(profiles.characters):
        print(f"{name:6s}" + " ".join(f"{v:8.2f}" for v in profiles.z[i]))

    correlation = spearman_matrix(profiles)
    pairs = [
        (METRICS[a], METRICS[b], correlation[a, b])
        for a in range(len(METRICS))
        for b in range(a + 1, len(METRICS))
    ]
    top = sorted(pairs, key=lambda kv: -abs(kv[2]))[:3]
    print("strongest metric correlations:", ", ".join(f"{a}~{b}:{r:.2f}" for a, b, r in top))

    partitions[medium] = cluster_profiles(profiles)
    clusters: dict[int, list[str]] = {}
    for name, label in partitions[medium].items():
        clusters.setdefault(label, []).append(name)
    for label in sorted(clusters):
        print(f"cluster {label}: {sorted(clusters[label])}")

print("\n== agreement between the adaptations' cluster structures ==")
for i, a in enumerate(media):
    for b in media[i + 1 :]:
        print(f"ARI {a} vs {b}: {ari(partitions[a], partitions[b]):.2f}")
