// SPDX-License-Identifier: Apache-2.0
// stw_cli: resonance | coeffs | isola | dn-coeffs | validate
#include "stw/cli.hpp"

int main(int argc, char** argv) { return stw::run_cli(argc, argv); }
