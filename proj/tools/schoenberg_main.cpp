#include "cli_app.hpp"

int main(int argc, char** argv) { return schoenberg::cli::run(argc, argv); }
