#pragma once

// Built-in example inputs used by the repro command and the test suites.

namespace pdaproc::corpus {

const char* counter_spec();
const char* counter_pda();
const char* difference_seq_spec();
const char* difference_seqc_spec();
const char* unguarded_tsp_spec();
const char* unguarded_tspc_spec();
const char* twostate_pda();
const char* fig9_spec();
const char* nonseparation_spec();
const char* stack_pda();
const char* cointoss_spec();

}  // namespace pdaproc::corpus
