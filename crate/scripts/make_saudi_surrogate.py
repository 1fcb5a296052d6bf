#!/usr/bin/env python3
"""Generate the surrogate Saudi Arabia case series used by the acceptance suite.

The output mimics the layout of the Our World in Data COVID-19 table
(date, location, total_cases) but is NOT real data: it is a smooth curve
through approximate daily-case levels, with a weekly reporting modulation,
accumulated into a cumulative count. Point the acceptance suite at a real
OWID export with GOMPERTZ_SAUDI_OWID_CSV for the strict comparison.

Usage: python3 scripts/make_saudi_surrogate.py > crates/core/fixtures/saudi_surrogate_owid.csv
"""
import datetime as dt
import sys

import numpy as np
from scipy.interpolate import PchipInterpolator

# approximate 7-day-average daily cases at selected dates
KNOTS = """2020-03-12 10
2020-03-25 100
2020-04-10 350
2020-04-25 1200
2020-05-10 1900
2020-05-25 2400
2020-06-10 3500
2020-06-18 4700
2020-06-30 3900
2020-07-15 2600
2020-07-31 1700
2020-08-15 1400
2020-08-31 1000
2020-09-15 650
2020-09-30 450
2020-10-31 380
2020-11-30 250
2020-12-31 120
2021-01-15 170
2021-02-15 320
2021-03-15 380
2021-03-31 450
2021-04-30 950
2021-05-31 1150
2021-06-15 1250
2021-06-30 1300
2021-07-15 1200
2021-07-31 1000
2021-08-15 600
2021-08-31 200
2021-09-30 60
2021-10-31 45
2021-11-30 40
2021-12-15 90
2021-12-20 150
2021-12-25 550
2021-12-29 1800
2022-01-01 3000
2022-01-05 4100
2022-01-10 5200
2022-01-15 5700
2022-01-19 5900
2022-01-25 4700
2022-01-31 3600
2022-02-07 2600
2022-02-14 1650
2022-02-21 900
2022-02-28 500
2022-03-31 120
2022-04-30 100
2022-05-15 350
2022-05-31 600
2022-06-15 900
2022-06-30 650
2022-07-20 450"""

WEEKDAY = np.array([1.0, 1.06, 1.08, 1.04, 0.98, 0.90, 0.94])
START = dt.date(2020, 3, 12)
DAYS = 861
INITIAL = 45


def main():
    xs, ys = [], []
    for line in KNOTS.splitlines():
        day, level = line.split()
        xs.append((dt.date.fromisoformat(day) - START).days)
        ys.append(float(level))
    curve = PchipInterpolator(xs, np.log(ys))
    days = np.arange(DAYS)
    daily = np.exp(curve(days)) * WEEKDAY[days % 7]
    cum = np.round(INITIAL + np.concatenate([[0.0], np.cumsum(daily[1:])]))
    out = sys.stdout
    out.write("iso_code,location,date,total_cases,new_cases\n")
    prev = None
    for d, c in zip(days, cum):
        date = START + dt.timedelta(days=int(d))
        new = "" if prev is None else f"{c - prev:.1f}"
        out.write(f"SAU,Saudi Arabia,{date.isoformat()},{c:.1f},{new}\n")
        prev = c


if __name__ == "__main__":
    main()
