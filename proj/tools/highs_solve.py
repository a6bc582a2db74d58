#!/usr/bin/env python3
# Copyright 2026 The fairum Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Solves an LP-format model with HiGHS.

Prints the optimal objective, or "infeasible", as the last line. Suitable
as `fairum bench --milp-cmd "python3 tools/highs_solve.py {lp}"`.
"""

import argparse
import sys

import highspy


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("lp", help="model file in LP format")
    parser.add_argument("--strict", action="store_true",
                        help="exit 4 if the reader reports a warning")
    args = parser.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    status = h.readModel(args.lp)
    if status == highspy.HighsStatus.kError:
        print(f"cannot read {args.lp}", file=sys.stderr)
        return 2
    if args.strict and status == highspy.HighsStatus.kWarning:
        print(f"reader warning on {args.lp}", file=sys.stderr)
        return 4
    h.run()
    model_status = h.getModelStatus()
    if model_status == highspy.HighsModelStatus.kInfeasible:
        print("infeasible")
        return 0
    if model_status != highspy.HighsModelStatus.kOptimal:
        print(f"solver stopped: {h.modelStatusToString(model_status)}", file=sys.stderr)
        return 3
    print(f"{h.getInfo().objective_function_value:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
