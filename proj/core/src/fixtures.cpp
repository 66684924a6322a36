#include "bolaa/fixtures.hpp"

#include <fstream>
#include <sstream>

#include "bolaa/errors.hpp"
#include "json_codec.hpp"
#include "resources.hpp"

namespace bolaa {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json parse_document(std::string_view text, std::string_view what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema_version")) {
    throw SchemaError(std::string(what) + " has no schema_version");
  }
  if (doc["schema_version"] != kSchemaVersion) {
    throw SchemaError(std::string(what) + " has unsupported schema_version " + doc["schema_version"].dump());
  }
  return doc;
}

}  // namespace

std::vector<Product> parse_catalog(std::string_view json_text) {
  const json doc = parse_document(json_text, "catalog");
  std::vector<Product> out;
  try {
    for (const auto& p : doc.at("products")) out.push_back(codec::product_from_json(p));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("catalog: ") + e.what());
  }
  return out;
}

std::map<std::string, std::vector<Paragraph>> parse_corpus(std::string_view json_text) {
  const json doc = parse_document(json_text, "corpus");
  try {
    return doc.at("pages").get<std::map<std::string, std::vector<Paragraph>>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("corpus: ") + e.what());
  }
}

std::vector<Task> parse_tasks(std::string_view json_text) {
  const json doc = parse_document(json_text, "task file");
  std::vector<Task> out;
  try {
    for (const auto& t : doc.at("tasks")) out.push_back(codec::task_from_json(t));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("task file: ") + e.what());
  }
  return out;
}

std::string serialize_tasks(const std::vector<Task>& tasks) {
  json arr = json::array();
  for (const auto& t : tasks) arr.push_back(codec::to_json(t));
  return json{{"schema_version", kSchemaVersion}, {"tasks", std::move(arr)}}.dump(1) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::shared_ptr<const Catalog> load_catalog(const std::filesystem::path& path) {
  return std::make_shared<const Catalog>(parse_catalog(read_file(path)));
}

std::shared_ptr<const Corpus> load_corpus(const std::filesystem::path& path) {
  return std::make_shared<const Corpus>(parse_corpus(read_file(path)));
}

std::vector<Task> load_tasks(const std::filesystem::path& path) { return parse_tasks(read_file(path)); }

std::shared_ptr<const Catalog> builtin_catalog() {
  static const auto catalog = std::make_shared<const Catalog>(parse_catalog(detail::resource("catalog.json")));
  return catalog;
}

std::shared_ptr<const Corpus> builtin_corpus() {
  static const auto corpus = std::make_shared<const Corpus>(parse_corpus(detail::resource("wiki_corpus.json")));
  return corpus;
}

const std::vector<Task>& builtin_tasks(EnvKind env) {
  static const auto shopping = parse_tasks(detail::resource("shopping_tasks.json"));
  static const auto wikiqa = parse_tasks(detail::resource("wiki_tasks.json"));
  return env == EnvKind::shopping ? shopping : wikiqa;
}

}  // namespace bolaa
