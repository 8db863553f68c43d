#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isptb::vp {

// Memory-mapped command list executed by the generic processor model.
// Line-oriented text: W addr data | R addr | E addr mask expect |
// P addr mask expect timeout_cycles | D cycles | END. '#' comments and
// blank lines are skipped; numerals are hex (0x) or decimal.
struct ProgCommand {
    enum class Op { Write, Read, Expect, Poll, Delay, End };

    Op op = Op::End;
    std::uint64_t addr = 0;
    std::uint32_t data = 0;
    std::uint32_t mask = 0;
    std::uint32_t expect = 0;
    std::uint64_t cycles = 0; // Delay length or Poll timeout
    int line = 0;
};

struct TestProgram {
    std::vector<ProgCommand> commands; // ends with exactly one End
};

struct ProgramError {
    enum class Code { BadOpcode, BadOperand, MissingEnd };
    Code code;
    int line = 0; // 0 for MissingEnd
    std::string detail;
};

std::string_view to_string(ProgramError::Code code);

struct ProgramResult {
    std::optional<TestProgram> program; // present iff errors is empty
    std::vector<ProgramError> errors;

    bool ok() const { return errors.empty(); }
};

ProgramResult parse_program(std::string_view text);

} // namespace isptb::vp
