#pragma once

#include "ellrec/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ellrec::cli {

struct Options {
    std::string command;
    std::optional<std::uint64_t> p;
    std::optional<std::uint64_t> pmax;
    std::optional<std::size_t> n;
    std::optional<std::size_t> nmax;
    std::optional<unsigned> rmax;
    std::optional<std::size_t> kmax;
    std::optional<std::string> init;   // "C0,C1,C2,C3,C4" or "C1,C2,C3,C4"
    std::optional<std::string> curve;  // "A,B"
    std::uint64_t seed = 1;
    bool quick = false;
};

struct Outcome {
    Report report;
    std::vector<std::string> text;  // printed above the check table
};

// Thrown for bad flag values; the caller exits with status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& command_names();
Outcome run(const Options& opt);
std::string render(const Outcome& out);

}  // namespace ellrec::cli
