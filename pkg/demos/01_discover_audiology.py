"""Discover a causal graph from the bundled audiology table.

Walks through the first half of the pipeline: ingest a CSV of
categorical columns, run the greedy forward/backward search, and look
at what came out: the edge list with per-edge uncertainty, and the
score trace that shows how the graph was assembled one edge at a time.
"""

from pathlib import Path

from causalkit import discover, ingest_file

HERE = Path(__file__).resolve().parent
CSV = HERE.parent / "data" / "audiology.csv"


def main():
    dataset = ingest_file(CSV)
    print(f"{dataset.sample_size} rows, {len(dataset.column_names)} columns")

    graph = discover(dataset)
    print(f"\ngraph score: {graph.score:.2f}")
    print(f"edges found: {len(graph.edges)}")

    roots = [n for n in graph.nodes if not graph.parents(n)]
    print(f"root dimensions ({len(roots)}): {', '.join(sorted(roots))}")

    # uncertainty is the score drop you would take by deleting the edge,
    # so larger numbers mean the data insists harder on that edge
    print("\nedges by uncertainty:")
    ranked = sorted(graph.edges.items(), key=lambda kv: -kv[1])
    for (source, target), uncertainty in ranked:
        print(f"  {source:>22} -> {target:<22} {uncertainty:8.2f}")

    print("\nhow the search got there:")
    for move in graph.score_trace:
        verb = "added" if move.kind == "insert" else "removed"
        print(f"  {verb} {move.source} -> {move.target}  (delta {move.delta:+.2f})")


if __name__ == "__main__":
    main()
