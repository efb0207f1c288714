#include "htprox/experiments.hpp"

int main(int argc, char** argv) { return htprox::run_experiment_cli(argc, argv); }
