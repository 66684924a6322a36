#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bolaa/catalog.hpp"
#include "bolaa/types.hpp"
#include "bolaa/wiki_env.hpp"

namespace bolaa {

// All fixture documents carry "schema_version": 1.
//   catalog: {"schema_version", "products": [Product...]}
//   corpus:  {"schema_version", "pages": {title: [[sentence...]...]}}
//   tasks:   {"schema_version", "tasks": [Task...]}
std::vector<Product> parse_catalog(std::string_view json_text);
std::map<std::string, std::vector<Paragraph>> parse_corpus(std::string_view json_text);
std::vector<Task> parse_tasks(std::string_view json_text);
std::string serialize_tasks(const std::vector<Task>& tasks);

std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::shared_ptr<const Catalog> load_catalog(const std::filesystem::path& path);
std::shared_ptr<const Corpus> load_corpus(const std::filesystem::path& path);
std::vector<Task> load_tasks(const std::filesystem::path& path);

// The fixtures shipped with the library.
std::shared_ptr<const Catalog> builtin_catalog();
std::shared_ptr<const Corpus> builtin_corpus();
const std::vector<Task>& builtin_tasks(EnvKind env);

}  // namespace bolaa
