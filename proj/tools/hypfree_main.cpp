#include <hypfree/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto out = hypfree::cli::run(std::move(args), hypfree::cli::process_context());
    std::cout << out.payload;
    std::cerr << out.diagnostics;
    return out.exit_code;
}
