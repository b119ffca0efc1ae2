#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fodb/entail.hpp"
#include "fodb/update.hpp"

namespace fodb {

// .fodb files: signature / domain / interpret / theory blocks, '#' comments.
Database parse_database(std::string_view text);
Database load_database(const std::string& path);
std::string save_database(const Database& d);  // canonical: symbols sorted, domain in order

// .ops scripts: one operation per line form.
std::vector<OperationDescriptor> parse_ops(std::string_view text);
std::vector<OperationDescriptor> load_ops(const std::string& path);
std::string save_ops(const std::vector<OperationDescriptor>& ops);

// Parses the script and applies it to base.
Update load_ops_script(const std::string& path, const Database& base, OpMode mode);

// .ded files: premises { ... } steps { ... } conclusion { ... }. Formulas may
// use symbols outside sig (that is the interesting case).
Deduction parse_deduction(std::string_view text, const Signature& sig);
Deduction load_deduction(const std::string& path, const Signature& sig);

// Witness rendering: domain and interpret blocks in .fodb syntax.
std::string structure_to_interpret_block(const Structure& a);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace fodb
