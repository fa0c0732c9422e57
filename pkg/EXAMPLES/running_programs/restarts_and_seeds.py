import logging
import clerical
from clerical.evaluator import EvalConfig

# log every restart
logging.basicConfig(level=logging.INFO)

# 1 and 1 + 2^-100 only differ in the 101st bit, the first attempt at 60 bits cannot tell them apart
program = clerical.elaborate(clerical.parse_program('do real(1) < real(1) + 2 ^ (-100)'))
report = clerical.run_with_restarts(program)

print(report.output, report.to_dict())

# a case with two true guards picks one of them. A seed shuffles the polling order
choice = clerical.elaborate(clerical.parse_program('do case true => 0 | true => 1 end'))

for seed in range(5):
    print(seed, clerical.run_with_restarts(choice, base_cfg=EvalConfig(scheduler_seed=seed)).output)

# deadlocks and fuel are reported, not retried
looping = clerical.elaborate(clerical.parse_program('do while true do skip end'))
report = clerical.run_with_restarts(looping, base_cfg=EvalConfig(fuel=1000))

print(report.ok, report.diagnostic)
