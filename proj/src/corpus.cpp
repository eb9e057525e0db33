#include "pdaproc/corpus.hpp"

namespace pdaproc::corpus {

const char* counter_spec() {
    return R"(spec counter {
  mode seqc;
  init X;
  X = 1 + a.(Y;X)
  Y = 1 + b.1 + a.(Y;Y)
}
)";
}

const char* counter_pda() {
    return R"(pda counter {
  states s;
  init s;
  finals s;
  data 1;
  s --a[eps/1]--> s
  s --a[1/1,1]--> s
  s --b[1/eps]--> s
}
)";
}

const char* difference_seq_spec() {
    return R"(spec difference {
  mode seq;
  init X;
  X = 1 + a.(Y;X)
  Y = 1 + b.1 + a.(Y;Y)
}
)";
}

const char* difference_seqc_spec() {
    return R"(spec difference {
  mode seqc;
  init X;
  X = 1 + a.(Y;X)
  Y = 1 + b.1 + a.(Y;Y)
}
)";
}

const char* unguarded_tsp_spec() {
    return R"(spec unguarded_tsp {
  mode seq;
  init X;
  X = 1 + X;a.1
}
)";
}

const char* unguarded_tspc_spec() {
    return R"(spec unguarded_tspc {
  mode seqc;
  init X;
  X = X;a.1 + 1
}
)";
}

const char* twostate_pda() {
    return R"(pda twostate {
  states up, down;
  init up;
  finals down;
  data 1;
  up --a[eps/1]--> up
  up --a[1/1,1]--> up
  up --b[1/eps]--> up
  up --c[eps/eps]--> down
  up --c[1/1]--> down
  down --b[1/eps]--> down
}
)";
}

const char* fig9_spec() {
    return R"(spec twocolour {
  mode seqc;
  init X;
  X = a.(X;Y) + b.1
  Y = 1 + c.1
}
)";
}

const char* nonseparation_spec() {
    return R"(spec nonseparation {
  mode seqc;
  init X;
  X = 1 + a.(Y;X)
  Y = b.1 + a.(Y;Y)
}
)";
}

const char* stack_pda() {
    return R"(pda stack {
  states s;
  init s;
  finals s;
  data d0, d1;
  s --push_d0[eps/d0]--> s
  s --push_d1[eps/d1]--> s
  s --pop_d0[d0/eps]--> s
  s --pop_d1[d1/eps]--> s
  s --push_d0[d0/d0,d0]--> s
  s --push_d0[d1/d0,d1]--> s
  s --push_d1[d0/d1,d0]--> s
  s --push_d1[d1/d1,d1]--> s
}
)";
}

const char* cointoss_spec() {
    return R"(spec cointoss {
  mode seqc;
  vars heads, tails;
  init S;
  T = toss.([heads]^^ 1) + toss.([tails]^^ 1)
  S = T;([heads] -> hurray.1 + [tails] -> S)
}
)";
}

}  // namespace pdaproc::corpus
