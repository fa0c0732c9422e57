import clerical
from clerical.evaluator import EvalConfig

SOURCE = '''
let neg(b : bool) : bool := if b then false else true end

do case (while true do skip end ; true) => true
      | false => true
      | neg(false) => false
   end
'''

program = clerical.elaborate(clerical.parse_program(SOURCE))

# everything the program may do: here only false, and it never diverges
print(clerical.denote_program(program, 16))

# one thing it does
print(clerical.run_with_restarts(program, base_cfg=EvalConfig(fuel=10000)).output)

# the approximants of a loop, one per number of unrollings
ctx = clerical.RwContext(rw=clerical.Context.of(('x', 'int')))
cond = clerical.elaborate_expr((), ctx, clerical.parse_expr('0 < x'))
body = clerical.elaborate_expr((), ctx, clerical.parse_expr('x := x - 1'))

for k, approximant in enumerate(clerical.while_chain((), ctx, cond, body, 4, [(3,)])):
    print(k, approximant[(3,)])
