// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(pagt::cli::main_with_args(std::env::args_os()));
}
