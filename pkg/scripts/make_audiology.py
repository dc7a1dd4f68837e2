"""Generate the bundled audiology-style fixture: 200 rows, 24 categorical columns.

A synthetic stand-in for a hearing-disorder survey table, sampled from a
known DAG with 5 exogenous dimensions and a strong noise -> class effect.
Deterministic (fixed seed); re-running reproduces data/audiology.csv exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

SEED = 20240826
N = 200

TF = ["f", "t"]
CLASS_VALUES = ["normal_ear", "cochlear_unknown", "cochlear_age", "mixed_cochlear"]

# name -> (parents, sampler). Column order is the header order.
STRUCTURE: list[tuple[str, list[str]]] = [
    ("age_gt_60", []),
    ("noise", []),
    ("tymp", []),
    ("bser", []),
    ("history_dizziness", []),
    ("fluctuating", ["noise"]),
    ("roaring", ["noise"]),
    ("notch_4k", ["noise"]),
    ("history_noise", ["noise"]),
    ("air", ["age_gt_60"]),
    ("m_sn_gt_1k", ["age_gt_60"]),
    ("ar_c", ["tymp"]),
    ("static_normal", ["tymp"]),
    ("late_wave_poor", ["bser"]),
    ("dizziness", ["history_dizziness"]),
    ("class", ["noise", "fluctuating"]),
    ("nausea", ["roaring"]),
    ("bone", ["air"]),
    ("speech", ["air"]),
    ("o_ar_c", ["ar_c"]),
    ("wave_poor", ["late_wave_poor"]),
    ("prolonged", ["m_sn_gt_1k"]),
    ("airBoneGap", ["bone"]),
    ("waveform_prolonged", ["wave_poor"]),
]

ROOT_P = {
    "age_gt_60": 0.45,
    "noise": 0.40,
    "tymp": 0.55,
    "bser": 0.35,
    "history_dizziness": 0.30,
}

# binary child: P(t | parent=f), P(t | parent=t)
BINARY_CPD = {
    "fluctuating": (0.10, 0.80),
    "roaring": (0.12, 0.82),
    "notch_4k": (0.15, 0.85),
    "history_noise": (0.08, 0.88),
    "air": (0.15, 0.85),
    "m_sn_gt_1k": (0.12, 0.80),
    "ar_c": (0.10, 0.85),
    "static_normal": (0.85, 0.12),
    "late_wave_poor": (0.10, 0.88),
    "dizziness": (0.10, 0.82),
    "nausea": (0.10, 0.80),
    "bone": (0.12, 0.85),
    "speech": (0.80, 0.12),
    "o_ar_c": (0.10, 0.85),
    "wave_poor": (0.12, 0.85),
    "prolonged": (0.10, 0.80),
    "airBoneGap": (0.15, 0.82),
    "waveform_prolonged": (0.12, 0.85),
}

# class rows over CLASS_VALUES, keyed by (noise, fluctuating)
CLASS_CPD = {
    (0, 0): [0.72, 0.04, 0.14, 0.10],
    (0, 1): [0.30, 0.14, 0.36, 0.20],
    (1, 0): [0.28, 0.52, 0.10, 0.10],
    (1, 1): [0.08, 0.68, 0.14, 0.10],
}


def generate(n: int = N, seed: int = SEED) -> tuple[list[str], np.ndarray]:
    rng = np.random.default_rng(seed)
    values: dict[str, np.ndarray] = {}
    for name, parents in STRUCTURE:
        if not parents:
            values[name] = (rng.random(n) < ROOT_P[name]).astype(int)
        elif name == "class":
            noise, fluct = values["noise"], values["fluctuating"]
            out = np.empty(n, dtype=int)
            for i in range(n):
                row = CLASS_CPD[(noise[i], fluct[i])]
                out[i] = rng.choice(len(CLASS_VALUES), p=row)
            values[name] = out
        else:
            p_f, p_t = BINARY_CPD[name]
            parent = values[parents[0]]
            probs = np.where(parent == 1, p_t, p_f)
            values[name] = (rng.random(n) < probs).astype(int)

    header = [name for name, _ in STRUCTURE]
    table = np.empty((n, len(header)), dtype=object)
    for j, name in enumerate(header):
        labels = CLASS_VALUES if name == "class" else TF
        table[:, j] = [labels[v] for v in values[name]]
    return header, table


def main():
    header, table = generate()
    out = Path(__file__).resolve().parent.parent / "data" / "audiology.csv"
    out.parent.mkdir(exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in table)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(table)} rows, {len(header)} columns)")


if __name__ == "__main__":
    main()
