#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace apt::cli {

enum class ParamType { net, lts, net_or_lts, integer, properties, word, output, text };

struct Param {
    std::string name;
    ParamType type;
    bool optional = false;
    std::string description;
};

class Arguments;

struct ModuleDescriptor {
    std::string name;
    std::vector<Param> params;
    /// Report keys the module may emit.
    std::vector<std::string> returns;
    std::string description;
    std::function<void(const Arguments&, std::ostream&)> run;
};

enum ExitCode { ok = 0, usage_error = 1, precondition_error = 2, internal_error = 3 };

const std::vector<ModuleDescriptor>& modules();

/// Exact name, else unique prefix. Throws InputError (listing candidates when ambiguous).
const ModuleDescriptor& resolve(const std::string& name);

std::string usage(const ModuleDescriptor& module);
std::string module_list();

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace apt::cli
