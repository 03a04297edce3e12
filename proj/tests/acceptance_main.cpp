// Runs the acceptance suite at the default configuration and reports one
// line per criterion. Nonzero exit on any failure or skip.

#include <iostream>

#include "lvhopf/commands.hpp"
#include "lvhopf/config.hpp"

int main() {
    lvhopf::RunConfig cfg;
    cfg.output_dir = "acceptance_out";
    return lvhopf::cmd_validate(cfg, std::cout);
}
