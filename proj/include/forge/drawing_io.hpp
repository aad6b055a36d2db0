#ifndef FORGE_DRAWING_IO_HPP
#define FORGE_DRAWING_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "forge/drawing.hpp"

namespace forge {

// Record layout (ids decimal; vertices 1-based, darts 0-based):
//   D n=<n_real> x=<x>
//   V <id>: <dart>,<dart>,...        clockwise rotation, reals then dummies
//   H <id> twin=<id> edge=<a>-<b> seg=<k>
//   .

void write_drawing(std::ostream& out, const Drawing& d);
std::string to_text(const Drawing& d);

struct ParsedRecord {
    int index = 0;       // 0-based record number in the file
    int first_line = 0;  // 1-based
    std::optional<Drawing> drawing;
    std::string error;   // set when drawing is empty
};

/// Reads every record, keeping malformed ones as error entries.
std::vector<ParsedRecord> read_records(std::istream& in);

/// Reads every record; throws std::runtime_error on the first malformed one.
std::vector<Drawing> read_drawings(std::istream& in);
std::vector<Drawing> read_drawings_file(const std::string& path);
void write_drawings_file(const std::string& path, const std::vector<Drawing>& ds);

}  // namespace forge

#endif
