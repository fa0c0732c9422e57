import clerical

SOURCE = '''
let abs(x : real) : real :=
  lim n.
    case x < 2 ^ (-n - 1) => -x
       | -2 ^ (-n - 1) < x => x
    end

do abs(real(-22) * inv(real(7)))
'''

program = clerical.elaborate(clerical.parse_program(SOURCE, 'abs_example.cl'))

print(program.main_type)  # R

report = clerical.run_with_restarts(program, digits=25)

print(report.output)  # 3.1428571428571428571428571
print(report.schedule)  # precision of every attempt, in bits

# the shipped corpus files work too
from clerical.corpus import load_corpus

pi_entry = next(entry for entry in load_corpus() if entry.name == 'pi')
print(clerical.run_with_restarts(clerical.elaborate(pi_entry.program()), digits=30).output)
