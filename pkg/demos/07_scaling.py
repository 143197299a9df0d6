"""Classification cost scales with K times the average posting height.

Uniform synthetic models at three class counts; the table shows the
measured classify latency tracking K * h, with the least-squares fit and
its coefficient of determination at the bottom.
"""

from invpat import run_bench

report = run_bench([1_000, 10_000, 50_000], k=26, x=256, r=0, seed=0)
print(report.table())
