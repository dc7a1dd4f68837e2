"""Turn a discovered graph into a layered drawing and export it as JSON.

The layout pass assigns every node to a layer (roots at 0, everything
else one past its deepest parent), collapses long cause chains into
aggregate nodes, hides edges that would span two or more layers behind
per-node glyphs, and orders each layer to keep edge crossings down.
The exported document is the same one the HTTP server returns.
"""

import json
from pathlib import Path

from causalkit import build_layout, discover, ingest_file
from causalkit.serialize import dumps, layout_to_doc

HERE = Path(__file__).resolve().parent
CSV = HERE.parent / "data" / "audiology.csv"
OUT = HERE / "audiology_layout.json"


def main():
    dataset = ingest_file(CSV)
    graph = discover(dataset)
    layout = build_layout(graph)

    print(f"{layout.layers} layers, {layout.crossings} crossings")
    for node in layout.nodes:
        if node.kind == "aggregate":
            print(f"aggregated chain: {' -> '.join(node.members)}")
        if node.hidden_causes:
            print(f"{node.id} hides long edges from: {', '.join(node.hidden_causes)}")

    by_layer = {}
    for node in layout.nodes:
        by_layer.setdefault(node.layer, []).append(node)
    for layer in sorted(by_layer):
        row = sorted(by_layer[layer], key=lambda n: n.order_in_layer)
        names = "  ".join(
            f"[{n.id}]" if n.role == "leaf" else n.id for n in row
        )
        print(f"layer {layer}: {names}")

    doc = layout_to_doc(layout, dataset=dataset)
    OUT.write_text(dumps(doc) + "\n")
    print(f"\nwrote {OUT.name} ({len(json.dumps(doc))} bytes, leaves in brackets)")


if __name__ == "__main__":
    main()
