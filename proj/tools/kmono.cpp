#include <variant>

#include "kmono/cli.hpp"

int main(int argc, char** argv) {
  auto parsed = kmono::cli::parse_command_line(argc, argv);
  if (auto* code = std::get_if<int>(&parsed)) return *code;
  return kmono::cli::run(std::get<kmono::cli::RunConfig>(parsed));
}
