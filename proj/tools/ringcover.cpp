#include "ringcover/cli.hpp"

int main(int argc, char** argv) { return ringcover::run_cli(argc, argv); }
