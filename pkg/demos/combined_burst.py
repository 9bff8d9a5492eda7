"""Everything drifting at once: phase difference, path gain and AOA.

The combined mode drives the full receive chain: roof patches looking
forward and backward, log-distance path gain, and the geometric phase
difference, with the burst started at the worst angle of arrival the
pattern pair allows.  Output is unnormalized sum SNR (transmit power over
noise power folded in), so the curves sit near the link budget and the
dips read directly as lost dB.

Run:  python3 demos/combined_burst.py  (writes speed_sweep_combined.csv)
"""

import math

import numpy as np

from phasecomb import (PathlossModel, ScenarioParams, builtin_pattern,
                       carrier_wavelength, design_rule_alpha_star,
                       speed_sweep, worst_case_aoa)

K, T = 10, 0.1


if __name__ == "__main__":
    lam = carrier_wavelength(5.9e9)
    pats = (builtin_pattern("patch_front"), builtin_pattern("patch_rear"))
    phi = worst_case_aoa(*pats)
    print(f"patch pair worst-case AOA: {math.degrees(phi):.1f} deg "
          "(broadside null between the lobes)")

    naive = 2.0 * math.pi / (K * T)
    chosen = float(design_rule_alpha_star(K, T)[0])
    slopes = {"naive": naive, "chosen": chosen}
    model = PathlossModel()
    dv = np.arange(-60.0, 61.0, 1.0)

    last = None
    for d_x in (30.0, 10.0):
        base = ScenarioParams(d_x=d_x, d_y=-4.0, delta_v=0.0,
                              delta_a=10.0 * lam, wavelength=lam,
                              n_packets=K, t_interval=T)
        res = speed_sweep("combined", slopes, dv, base, model=model,
                          patterns=pats, paths=("exact",),
                          d_y_values=(-4.0, 4.0))
        ref = res.series["reference_db"]
        print(f"\nd_x = {d_x:g} m, nominal burst at "
              f"{float(np.median(ref)):.1f} dB:")
        for label in slopes:
            dip = ref - res.series[f"{label}_exact_db"]
            i = int(np.argmax(dip))
            print(f"  {label:7s}: worst dip {dip[i]:6.2f} dB below nominal "
                  f"at {res.values[i]:+.0f} km/h")
        last = res

    print("\nthe naive slope turns specific speeds into double-digit fades;")
    print("the design-rule slope keeps the whole speed envelope within a")
    print("few dB of nominal even this close to the receiver")

    out = "speed_sweep_combined.csv"
    last.to_csv(out)
    print(f"\nwrote {out}")
