#include "isptb/vp/program.hpp"

#include "isptb/cfg/regmap_xml.hpp"

#include <sstream>

namespace isptb::vp {

std::string_view to_string(ProgramError::Code code) {
    switch (code) {
    case ProgramError::Code::BadOpcode: return "BAD_OPCODE";
    case ProgramError::Code::BadOperand: return "BAD_OPERAND";
    case ProgramError::Code::MissingEnd: return "MISSING_END";
    }
    return "?";
}

ProgramResult parse_program(std::string_view text) {
    ProgramResult result;
    TestProgram program;
    bool saw_end = false;

    std::istringstream stream{std::string(text)};
    std::string raw_line;
    int line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        if (const auto hash = raw_line.find('#'); hash != std::string::npos) {
            raw_line.erase(hash);
        }
        std::istringstream fields(raw_line);
        std::string opcode;
        if (!(fields >> opcode)) continue; // blank line

        if (saw_end) {
            result.errors.push_back({ProgramError::Code::BadOpcode, line_no,
                                     "command after END: '" + opcode + "'"});
            continue;
        }

        auto operand = [&](std::uint64_t& out) {
            std::string token;
            if (!(fields >> token)) return false;
            const auto n = cfg::parse_number(token);
            if (!n) return false;
            out = *n;
            return true;
        };
        auto operand32 = [&](std::uint32_t& out) {
            std::uint64_t wide = 0;
            if (!operand(wide) || wide > 0xFFFF'FFFFull) return false;
            out = static_cast<std::uint32_t>(wide);
            return true;
        };
        auto bad_operand = [&] {
            result.errors.push_back(
                {ProgramError::Code::BadOperand, line_no, "in '" + raw_line + "'"});
        };
        auto expect_nothing_more = [&] {
            std::string extra;
            return !(fields >> extra);
        };

        ProgCommand cmd;
        cmd.line = line_no;
        if (opcode == "W") {
            cmd.op = ProgCommand::Op::Write;
            if (!operand(cmd.addr) || !operand32(cmd.data) || !expect_nothing_more()) {
                bad_operand();
                continue;
            }
        } else if (opcode == "R") {
            cmd.op = ProgCommand::Op::Read;
            if (!operand(cmd.addr) || !expect_nothing_more()) {
                bad_operand();
                continue;
            }
        } else if (opcode == "E") {
            cmd.op = ProgCommand::Op::Expect;
            if (!operand(cmd.addr) || !operand32(cmd.mask) || !operand32(cmd.expect) ||
                !expect_nothing_more()) {
                bad_operand();
                continue;
            }
        } else if (opcode == "P") {
            cmd.op = ProgCommand::Op::Poll;
            if (!operand(cmd.addr) || !operand32(cmd.mask) || !operand32(cmd.expect) ||
                !operand(cmd.cycles) || !expect_nothing_more()) {
                bad_operand();
                continue;
            }
        } else if (opcode == "D") {
            cmd.op = ProgCommand::Op::Delay;
            if (!operand(cmd.cycles) || !expect_nothing_more()) {
                bad_operand();
                continue;
            }
        } else if (opcode == "END") {
            cmd.op = ProgCommand::Op::End;
            if (!expect_nothing_more()) {
                bad_operand();
                continue;
            }
            saw_end = true;
        } else {
            result.errors.push_back(
                {ProgramError::Code::BadOpcode, line_no, "unknown opcode '" + opcode + "'"});
            continue;
        }
        program.commands.push_back(cmd);
    }

    if (!saw_end) {
        result.errors.push_back({ProgramError::Code::MissingEnd, 0, "program lacks END"});
    }
    if (result.errors.empty()) result.program = std::move(program);
    return result;
}

} // namespace isptb::vp
