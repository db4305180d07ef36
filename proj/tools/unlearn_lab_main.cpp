// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "unlearn_lab/harness.hpp"

int main(int argc, char** argv) {
  return unlearn_lab::run_cli(argc, argv, std::cout, std::cerr);
}
