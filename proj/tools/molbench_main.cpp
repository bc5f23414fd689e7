//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molbench/cli.hpp"

int main(int argc, char **argv) { return molbench::cli::run(argc, argv); }
