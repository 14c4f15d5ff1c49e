"""Phase-split timings and empirical complexity of the spectrum pipeline.

Per grid size the pipeline splits into transform (building the blocks) and
SVD (sweeping them).  Block count grows like n*m while per-block cost is
constant in the grid, so total time should scale like the grid area; against
the channel count the block SVD dominates with cubic cost.  This demo runs a
small sweep and fits both exponents.  Sizes are kept modest so it finishes in
about a minute; bump them for smoother fits.
"""

import convspectra as cs

spatial = cs.BenchConfig(methods=("lfa", "fft"), sizes=(64, 128, 256),
                         channels=(8,), repeats=3, warmups=1)
records = cs.run_bench(spatial)

print(f"{'method':>8} {'n':>5} {'s_transform':>12} {'s_copy':>8} "
      f"{'s_svd':>8} {'s_total':>9}")
for key, total in sorted(cs.bench.median_totals(records).items()):
    method, n, m, c_in, c_out = key
    sample = next(r for r in records
                  if (r.method, r.n) == (method, n) and not r.warmup_flag)
    print(f"{method:>8} {n:>5} {sample.s_transform:>12.4f} "
          f"{sample.s_copy:>8.4f} {sample.s_svd:>8.4f} {total:>9.4f}")

print("\nfft/symbol total-time ratios:")
for row in cs.fft_lfa_ratios(records):
    print(f"  n={row['n']:>4}: {row['ratio']:.2f}")

fits = cs.scaling_fit(records)
for method, fit in fits.items():
    print(f"\n{method}: spatial exponent {fit.spatial_exponent:.2f} "
          f"(theory: 2 -- cost linear in the number of frequencies)")

channel = cs.BenchConfig(methods=("lfa",), sizes=(32,), channels=(4, 8, 16),
                         repeats=3, warmups=1)
fit = cs.scaling_fit(cs.run_bench(channel))["lfa"]
print(f"lfa: channel exponent {fit.channel_exponent:.2f} "
      f"(theory: 3 -- dense SVD per block)")

cs.write_bench_csv(records, "bench_records.csv")
print("\nwrote bench_records.csv")
