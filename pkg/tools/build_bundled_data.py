#!/usr/bin/env python3
"""Regenerate the bundled data files under src/ranklens/data/.

Two artifacts come out of here:

* table1_model.json — a frozen scoring model for the bundled top-10 review
  pool. Coefficients are least-squares calibrated on the pool's published
  scores (on the logit scale), then gauge-fixed so that both high-secondary
  specialization dummies carry positive weights. The script asserts the
  qualitative facts the fixture must reproduce (full rank order, the
  boundary-pair pros, importance ordering) before writing anything.

* campus_recruitment_synthetic.csv — a deterministic synthetic stand-in for
  the public Campus Recruitment placement data, matching its schema and the
  documented aggregates (215 rows, 148 placed / 67 not placed, 65% male).
  The real file is not redistributable here; see the README for how to use
  the original instead.
"""
from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from ranklens import (  # noqa: E402
    TopZ,
    contrast_pair,
    load_csv,
    load_schema,
    load_model,
    rank,
    render_text,
)
from ranklens.encoding import EncodedColumn  # noqa: E402
from ranklens.glm import FittedModel, logit, model_to_dict  # noqa: E402

DATA = REPO / "src" / "ranklens" / "data"

# Published top-10 review pool: id -> (score, degree_p, hsc_p, sci, ssc_p, workex)
TABLE1 = [
    ("00034", 0.99933, 81.0, 65.0, 1, 87.0, 1),
    ("00029", 0.99648, 67.5, 76.5, 0, 76.76, 1),
    ("00139", 0.9959, 73.0, 64.0, 1, 82.0, 1),
    ("00097", 0.99578, 76.0, 70.0, 1, 76.0, 1),
    ("00079", 0.99418, 64.5, 90.9, 1, 84.0, 0),
    ("00188", 0.9872, 67.0, 65.5, 1, 78.5, 1),
    ("00140", 0.98367, 59.0, 70.0, 0, 77.0, 1),
    ("00070", 0.98218, 66.0, 73.0, 1, 73.0, 1),
    ("00063", 0.9769, 67.4, 64.2, 1, 86.5, 0),
    ("00072", 0.97364, 71.0, 70.29, 0, 75.0, 0),
]

COM_GAUGE = 0.8  # weight assigned to the commerce dummy (only the sci-com gap is identified)


def build_fixture_model() -> None:
    scores = np.array([r[1] for r in TABLE1])
    deg = np.array([r[2] for r in TABLE1])
    hsc = np.array([r[3] for r in TABLE1])
    sci = np.array([float(r[4]) for r in TABLE1])
    ssc = np.array([r[5] for r in TABLE1])
    wex = np.array([float(r[6]) for r in TABLE1])

    stats = {
        "DEGREE_P": (deg.mean(), deg.std()),
        "HSC_P": (hsc.mean(), hsc.std()),
        "SSC_P": (ssc.mean(), ssc.std()),
    }
    z = lambda arr, name: (arr - stats[name][0]) / stats[name][1]

    # Every pool row took either Com or Sci, so only (intercept + com) and
    # (sci - com) are identified; fit the reduced design, then re-introduce
    # the commerce dummy at a fixed positive gauge.
    design = np.column_stack([
        np.ones(len(TABLE1)),
        z(deg, "DEGREE_P"), z(hsc, "HSC_P"), sci, z(ssc, "SSC_P"), wex,
    ])
    target = logit(scores)
    beta, *_ = np.linalg.lstsq(design, target, rcond=None)
    intercept_plus_com, a_deg, a_hsc, d_sci, a_ssc, a_wex = beta

    a_com = COM_GAUGE
    a_sci = a_com + d_sci
    intercept = intercept_plus_com - a_com

    resid = design @ beta - target
    print(f"lstsq residual max |logit error| = {np.abs(resid).max():.4f}")
    print(f"coefficients: DEG={a_deg:.4f} HSC={a_hsc:.4f} COM={a_com:.4f} "
          f"SCI={a_sci:.4f} SSC={a_ssc:.4f} WEX={a_wex:.4f} intercept={intercept:.4f}")
    assert min(a_deg, a_hsc, a_com, a_sci, a_ssc, a_wex) > 0, "fixture needs all-positive weights"

    def num(name):
        return EncodedColumn(name, name, "numeric", mean=stats[name][0], std=stats[name][1])

    columns = (
        num("DEGREE_P"),
        num("HSC_P"),
        EncodedColumn("HSC_S_COM", "HSC_S", "categorical", level="Com"),
        EncodedColumn("HSC_S_SCI", "HSC_S", "categorical", level="Sci"),
        num("SSC_P"),
        EncodedColumn("WORKEX_YES", "WORKEX", "binary", level="Yes"),
    )
    model = FittedModel(
        columns=columns,
        coefficients=np.array([a_deg, a_hsc, a_com, a_sci, a_ssc, a_wex]),
        intercept=float(intercept),
        std_errors=np.ones(6),
        p_values=np.full(6, 1e-3),
        implicit_columns=(EncodedColumn("HSC_S_ART", "HSC_S", "categorical", level="Art"),),
        categorical_levels={"HSC_S": ("Art", "Com", "Sci")},
        log_likelihood=0.0,
        converged=True,
    )
    out = DATA / "table1_model.json"
    out.write_text(json.dumps(model_to_dict(model), indent=2), encoding="utf-8")
    print(f"wrote {out}")

    # -- verify the fixture against the published facts --------------------
    pool = load_csv(DATA / "table1_pool.csv", load_schema(DATA / "table1_schema.yaml"))
    fixture = load_model(out)
    rl = rank(fixture, pool, k=5)
    want_order = [r[0] for r in TABLE1]
    got_order = list(rl.ids)
    assert got_order == want_order, f"rank order mismatch:\n{got_order}\n{want_order}"
    for entry, row in zip(rl.entries, TABLE1):
        assert abs(entry.score - row[1]) < 2e-3, (entry, row[1])

    report = contrast_pair(fixture, rl, pool, "00188", "00079", TopZ(2))
    assert report.item_a == "00079"
    bene = {c.feature: c.beneficiary for c in report.contributions}
    assert bene["HSC_P"] == "A" and bene["SSC_P"] == "A"
    assert bene["DEGREE_P"] == "B" and bene["WORKEX_YES"] == "B"
    assert bene["HSC_S_SCI"] == "Neither" and bene["HSC_S_COM"] == "Neither"
    imp = {c.feature: c.importance for c in report.contributions}
    assert imp["HSC_P"] > imp["SSC_P"], "HSC_P must dominate SSC_P for this pair"
    assert imp["WORKEX_YES"] > imp["DEGREE_P"], "work experience must dominate DEGREE_P"
    ratio = imp["SSC_P"] / imp["HSC_P"]
    print(f"importance ratio SSC_P/HSC_P = {ratio:.3f} (published narrative: about one half)")

    text = render_text(report)
    expect_a = ("Characteristics in favour of Candidate 00079 include "
                "a higher score in HSC_P and a higher score in SSC_P.")
    expect_b = ("Characteristics in favour of Candidate 00188 include "
                "a higher score in DEGREE_P and having previous working experience.")
    joined = str(text)
    assert expect_a in joined, joined
    assert expect_b in joined, joined
    print("fixture verification passed")


# ---------------------------------------------------------------------------

N = 215
N_PLACED = 148
SEED = 20240215


def _clipped_normal(rng, mean, sd, lo, hi, size):
    return np.clip(rng.normal(mean, sd, size), lo, hi).round(2)


def build_synthetic_campus() -> None:
    rng = np.random.default_rng(SEED)

    gender = np.array(["M"] * 140 + ["F"] * 75)
    rng.shuffle(gender)
    ssc_b = np.array(["Central"] * 116 + ["Others"] * 99)
    rng.shuffle(ssc_b)
    hsc_b = np.array(["Central"] * 84 + ["Others"] * 131)
    rng.shuffle(hsc_b)
    hsc_s = np.array(["Com"] * 95 + ["Sci"] * 80 + ["Art"] * 40)
    rng.shuffle(hsc_s)
    degree_t = np.array(["CommMgmt"] * 145 + ["SciTech"] * 59 + ["Others"] * 11)
    rng.shuffle(degree_t)
    workex = np.array(["Yes"] * 74 + ["No"] * 141)
    rng.shuffle(workex)
    spec = np.array(["MktFin"] * 120 + ["MktHR"] * 95)
    rng.shuffle(spec)

    ssc_p = _clipped_normal(rng, 67.3, 10.8, 40.9, 89.4, N)
    hsc_p = _clipped_normal(rng, 66.3, 10.9, 37.0, 97.7, N)
    degree_p = _clipped_normal(rng, 66.4, 7.4, 50.0, 91.0, N)
    etest_p = _clipped_normal(rng, 72.1, 13.3, 50.0, 98.0, N)
    mba_p = _clipped_normal(rng, 62.3, 5.8, 51.2, 77.9, N)

    zs = lambda arr: (arr - arr.mean()) / arr.std()
    latent = (
        1.00 * zs(ssc_p)
        + 0.90 * zs(hsc_p)
        + 0.80 * zs(degree_p)
        + 1.15 * (workex == "Yes")
        + 1.90 * (hsc_s == "Sci")
        + 0.95 * (hsc_s == "Com")
        + rng.logistic(0.0, 1.0, N)
    )
    # exact published class balance: bottom 67 latents are the not-placed
    order = np.argsort(latent)
    status = np.full(N, "Placed", dtype=object)
    status[order[: N - N_PLACED]] = "Not Placed"

    salary = np.where(
        status == "Placed",
        (np.clip(rng.normal(288000, 90000, N), 200000, 940000) // 100 * 100).astype(int).astype(str),
        "",
    )

    out = DATA / "campus_recruitment_synthetic.csv"
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([
            "SL_NO", "GENDER", "SSC_P", "SSC_B", "HSC_P", "HSC_B", "HSC_S",
            "DEGREE_P", "DEGREE_T", "WORKEX", "ETEST_P", "SPECIALIZATION",
            "MBA_P", "STATUS", "SALARY",
        ])
        for i in range(N):
            w.writerow([
                f"{i + 1:05d}", gender[i], ssc_p[i], ssc_b[i], hsc_p[i], hsc_b[i],
                hsc_s[i], degree_p[i], degree_t[i], workex[i], etest_p[i],
                spec[i], mba_p[i], status[i], salary[i],
            ])
    print(f"wrote {out}")

    ds = load_csv(out, load_schema(DATA / "campus_schema.yaml"))
    y = ds.targets()
    assert ds.n == N and int(y.sum()) == N_PLACED
    print(f"synthetic dataset check passed: n={ds.n}, placed={int(y.sum())}")


if __name__ == "__main__":
    build_fixture_model()
    build_synthetic_campus()
