"""Convergence of the empirical spectral distribution to the limit.

Pooled ESDs of Toeplitz draws at growing sizes are compared, in Levy
distance, against a Monte Carlo estimate of the limiting measure (the
expected spectral measure of the operator window at the projected basis
vector).  The distance decreases with the matrix size.  Scaled-down
version of the `htt limit` experiment; see the acceptance suite for the
full-size run.
"""

from pathlib import Path

import numpy as np

from htt import AlphaParams, RngSeed, build_toeplitz, esd, sample_entries
from htt.experiments import ExperimentConfig, reference_limit_measure
from htt.metrics import levy_distance
from htt.plots import emit_plots
from htt.serialize import histogram, save_histogram_csv
from htt.spectra import PointMeasure

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

cfg = ExperimentConfig(
    experiment="limit", alpha=0.5, ref_envs=60, w=256, seed=4, out_dir=str(OUT)
)
print("estimating the limiting measure from 60 environments ...")
ref = reference_limit_measure(cfg)

params = cfg.params()
replicas = 10
for i, n in enumerate((128, 512, 2048)):
    locs, wts = [], []
    for r in range(replicas):
        entries = sample_entries(n, params, RngSeed(4).with_stream(1000 * (i + 1) + r))
        m = esd(np.linalg.eigvalsh(build_toeplitz(entries)))
        locs.append(m.locations)
        wts.append(m.weights / replicas)
    pooled = PointMeasure.from_atoms(np.concatenate(locs), np.concatenate(wts))
    print(f"n = {n:5d}: levy distance to the limit estimate "
          f"{levy_distance(pooled, ref):.4f}")
    edges, masses = histogram(pooled, bins=60)
    save_histogram_csv(OUT / f"demo_esd_n{n}.csv", edges, masses)

edges, masses = histogram(ref, bins=60)
save_histogram_csv(OUT / "demo_reference.csv", edges, masses)
svg = emit_plots(
    [OUT / "demo_esd_n2048.csv", OUT / "demo_reference.csv"],
    out_path=OUT / "demo_overlay.svg",
    title="pooled ESD at n=2048 vs the limit estimate (alpha = 0.5)",
)[0]
print(f"wrote {svg}")
