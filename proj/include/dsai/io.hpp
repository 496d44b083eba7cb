#pragma once

#include <iosfwd>
#include <string>

#include "dsai/instance.hpp"
#include "dsai/oracle.hpp"

namespace dsai {

// Line-oriented instance format (extension ".dsai", 1-based ids, '#' comments):
//   p dsai <n> <m> <r> <p>
//   e <u> <v>          one line per edge
//   x <v>              one line per member of X
// The colourful variant adds
//   col <i> <v>        vertex v belongs to block C_i (i >= 1)
// with unassigned vertices defaulting to C_0.

Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);
void write_instance_file(const std::string& path, const Instance& inst);

ColourfulInstance read_colourful(std::istream& in);
ColourfulInstance read_colourful_file(const std::string& path);
void write_colourful(std::ostream& out, const ColourfulInstance& inst);
void write_colourful_file(const std::string& path, const ColourfulInstance& inst);

// DIMACS CNF.
CnfFormula read_dimacs_cnf(std::istream& in);
CnfFormula read_dimacs_cnf_file(const std::string& path);
void write_dimacs_cnf(std::ostream& out, const CnfFormula& f);

} // namespace dsai
