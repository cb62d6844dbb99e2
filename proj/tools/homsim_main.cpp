#include <iostream>
#include <string>
#include <vector>

#include "homsim/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << homsim::usage_text();
        return 2;
    }
    if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        std::cout << homsim::usage_text();
        return 0;
    }
    try {
        return homsim::run(homsim::parse_config(args));
    } catch (const homsim::UsageError& e) {
        std::cerr << "homsim: " << e.what() << "\n";
        return 2;
    }
}
