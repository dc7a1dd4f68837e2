"""Rank the causes of an outcome with paired do-interventions.

For a target value t of a target column, each candidate cause V is
scored by how far P(t | do(V=v)) can be pushed from P(t | do(V != v)),
maximised over the values v of V.  Dimensions with no causal path to
the target score exactly zero, which makes the ranking easy to read.
"""

from pathlib import Path

from causalkit import attribute, discover, fit_cpds, ingest_file

CSV = Path(__file__).resolve().parent.parent / "data" / "audiology.csv"


def main():
    dataset = ingest_file(CSV)
    graph = discover(dataset)
    model = fit_cpds(dataset, graph)

    target_value = "cochlear_unknown"
    result = attribute(
        model, ("class", dataset.code_of("class", target_value))
    )

    print(f"what drives class = {target_value}?\n")
    ranked = sorted(result.effects.items(), key=lambda kv: -kv[1])
    for node, effect in ranked:
        tag = "(out of path)" if node in result.out_of_path else ""
        bar = "#" * int(round(effect * 40))
        print(f"  {node:>22}  {effect:6.3f}  {bar} {tag}")


if __name__ == "__main__":
    main()
