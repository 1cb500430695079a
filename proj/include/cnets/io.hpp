#ifndef CNETS_IO_HPP
#define CNETS_IO_HPP

#include <string>

#include "json.hpp"

#include "cnets/metastable.hpp"
#include "cnets/reduction.hpp"

namespace cnets::io {

using json = nlohmann::ordered_json;

json spec_to_json(const ChoiceSpec& spec);
ChoiceSpec spec_from_json(const json& j);

json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& j);

json system_to_json(const ContractSystem& system);
ContractSystem system_from_json(const json& j);

json compromise_to_json(const CompromiseVector& x);
CompromiseVector compromise_from_json(const json& j);

json split_map_to_json(const SplitMap& map);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

Instance load_instance(const std::string& path);
ChoiceSpec load_spec(const std::string& path);

/// A system argument is either an inline JSON array of contract ids or the
/// path of a file holding one.
ContractSystem parse_system_arg(const std::string& arg);

} // namespace cnets::io

#endif
