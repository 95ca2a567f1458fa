#!/usr/bin/env python3
"""Regenerates the bundled synthetic fixture (transactions.csv, prices.csv).

The fixture spans 2010-01-04 .. 2012-12-28. Weekly log prices follow an
AR(3) mean with GARCH(1,1) innovations; daily secondary quotes add small
noise around the weekly level, and Tuesdays carry a primary quote.
Transfers draw per-pair daily quantities from log-linear price responses
so the elasticity stage has signal to recover. A handful of malformed
rows, a duplicate id, ADMIN legs, and out-of-window rows are included on
purpose to exercise the lenient parsing and filtering paths.

The CSVs are committed; rerunning this script reproduces them bit-for-bit
with numpy's PCG64 stream (seed 20100104).
"""

import csv
import datetime as dt

import numpy as np

RNG = np.random.default_rng(20100104)

START = dt.date(2010, 1, 4)
END = dt.date(2012, 12, 28)

CORE = ["DE", "FR", "GB"]
PERIPHERY = ["NL", "PL", "IT"]

# Per-pair log-linear quantity response: (log-intercept, price elasticity).
PAIR_PARAMS = {
    ("FR", "FR"): (7.2, 1.2),
    ("DE", "DE"): (9.0, -1.5),
    ("GB", "GB"): (9.8, -0.8),
    ("FR", "DE"): (7.8, -0.5),
    ("DE", "FR"): (8.4, -2.0),
    ("FR", "GB"): (7.0, 0.3),
    ("GB", "FR"): (7.4, 0.7),
    ("DE", "GB"): (8.0, -1.2),
    ("GB", "DE"): (8.6, -2.0),
}
PAIR_FILL = 0.72  # probability a core pair trades on a given day

CLASS_PAIRS = [("OHA", "PHA"), ("PHA", "OHA"), ("PHA", "PHA"), ("OHA", "OHA")]
CLASS_WEIGHTS = [0.35, 0.30, 0.25, 0.10]


def business_days():
    d = START
    while d <= END:
        if d.weekday() < 5:
            yield d
        d += dt.timedelta(days=1)


def weekly_prices(n_weeks):
    omega, alpha, beta = 2.0e-4, 0.12, 0.80
    phi = (0.25, -0.15, 0.08)
    sigma2 = omega / (1.0 - alpha - beta)
    r_hist = [0.0, 0.0, 0.0]
    eps_prev = 0.0
    level = np.log(10.0)
    out = []
    for _ in range(n_weeks):
        sigma2 = omega + alpha * eps_prev**2 + beta * sigma2
        eps = np.sqrt(sigma2) * RNG.standard_normal()
        r = 0.0005 + phi[0] * r_hist[0] + phi[1] * r_hist[1] + phi[2] * r_hist[2] + eps
        r_hist = [r, r_hist[0], r_hist[1]]
        eps_prev = eps
        level += r
        out.append(np.exp(level))
    return out


def main():
    days = list(business_days())
    week_index = {}
    for d in days:
        iso = d.isocalendar()
        week_index.setdefault((iso[0], iso[1]), len(week_index))
    weekly = weekly_prices(len(week_index))

    price_rows = []
    day_price = {}
    for d in days:
        iso = d.isocalendar()
        base = weekly[week_index[(iso[0], iso[1])]]
        spot = base * np.exp(0.008 * RNG.standard_normal())
        day_price[d] = spot
        price_rows.append((d.isoformat(), "SECONDARY", f"{spot:.4f}"))
        if d.weekday() == 1:  # Tuesday auction quote
            primary = spot * np.exp(0.004 * RNG.standard_normal())
            price_rows.append((d.isoformat(), "PRIMARY", f"{primary:.4f}"))

    tx_rows = []
    counter = 0

    def add_tx(date_str, src, dst, src_class, dst_class, quantity):
        nonlocal counter
        counter += 1
        tx_rows.append((f"T{counter:06d}", date_str, src, dst, src_class, dst_class,
                        str(int(quantity))))

    for d in days:
        log_p = np.log(day_price[d])
        for (src, dst), (a, b) in PAIR_PARAMS.items():
            if RNG.uniform() > PAIR_FILL:
                continue
            # GB keeps a dominant internal book early on; it shrinks in 2012.
            boost = 0.0
            if src == "GB" and dst == "GB":
                boost = 1.8 if d.year < 2012 else 0.9
            total = np.exp(a + boost + b * log_p + 0.6 * RNG.standard_normal())
            pieces = int(RNG.integers(1, 4))
            splits = RNG.dirichlet(np.ones(pieces)) * total
            for q in splits:
                if q < 1.0:
                    continue
                ci = RNG.choice(len(CLASS_PAIRS), p=CLASS_WEIGHTS)
                fc, tc = CLASS_PAIRS[ci]
                add_tx(d.isoformat(), src, dst, fc, tc, round(q))
        # Light peripheral activity.
        if RNG.uniform() < 0.35:
            src = PERIPHERY[int(RNG.integers(0, 3))]
            dst = CORE[int(RNG.integers(0, 3))]
            if RNG.uniform() < 0.5:
                src, dst = dst, src
            add_tx(d.isoformat(), src, dst, "PHA", "PHA",
                   max(1, round(np.exp(5.5 + 0.5 * RNG.standard_normal()))))
        # Administrative legs (filtered out downstream).
        if RNG.uniform() < 0.10:
            dst = CORE[int(RNG.integers(0, 3))]
            add_tx(d.isoformat(), dst, dst, "ADMIN", "OHA",
                   max(1, round(np.exp(6.0 + 0.4 * RNG.standard_normal()))))

    # Deliberate dirt: out-of-window rows, a duplicate id, malformed rows.
    add_tx("2009-12-15", "DE", "FR", "OHA", "PHA", 5000)
    add_tx("2009-11-02", "GB", "GB", "PHA", "PHA", 750)
    tx_rows.append(("T000001", "2010-02-01", "DE", "FR", "OHA", "PHA", "123"))  # duplicate id
    tx_rows.append(("TBAD01", "2010-04-31", "DE", "FR", "OHA", "PHA", "10"))    # invalid date
    tx_rows.append(("TBAD02", "2010-05-03", "DE", "FR", "OHA", "PHA", "0"))     # zero quantity
    tx_rows.append(("TBAD03", "2010-05-04", "DE", "FR", "GOV", "PHA", "10"))    # unknown class

    with open("transactions.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["id", "date", "from_registry", "to_registry", "from_class",
                    "to_class", "quantity"])
        w.writerows(tx_rows)
    with open("prices.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["date", "market", "price"])
        w.writerows(price_rows)
    print(f"wrote {len(tx_rows)} transactions, {len(price_rows)} prices")


if __name__ == "__main__":
    main()
