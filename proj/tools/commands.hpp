#pragma once

// Named checks over documents and instances, with deterministic reports.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "compcat/endoalg.hpp"
#include "document.hpp"

namespace compcat::cli {

enum class Status { pass, fail, undetermined };
const char* to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::pass;
  std::vector<std::string> witnesses;
};

struct Report {
  std::string command;
  std::vector<Check> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  std::optional<std::string> error;

  // 0 when nothing failed, 1 when a check failed, 2 on error.
  int exit_code() const;
  std::string text() const;
  nlohmann::ordered_json json() const;
};

struct Options {
  bool json = false;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
  // Role flags naming blocks of the loaded document.
  std::string proj;
  std::string section;
  std::string adjunction;
  std::string side = "comprehension";
};

// Loaded documents plus the current instance, with resolved values cached.
class Workspace {
 public:
  void load_file(const std::filesystem::path& path);
  void load_text(std::string_view text);
  void set_instance(text::InstanceDoc inst);

  const text::Document& document() const noexcept { return doc_; }
  const std::optional<text::InstanceDoc>& instance_doc() const noexcept { return instance_doc_; }
  bool has_instance() const noexcept { return instance_doc_.has_value(); }

  CategoryPtr category(const std::string& name);
  Functor functor(const std::string& name);
  NatTrans nat_trans(const std::string& name);
  Adjunction adjunction(const std::string& name);
  LaxMorphism lax(const std::string& name);
  ArrowTwoCell two_cell(const std::string& name);
  LiftData lift(const std::string& name);
  const InstanceBundle& instance();

 private:
  std::vector<Mor> components(const std::vector<text::MapEntry>& entries, const std::string& over,
                              const std::string& in);

  text::Document doc_;
  std::map<std::string, CategoryPtr> categories_;
  std::map<std::string, Functor> functors_;
  std::optional<text::InstanceDoc> instance_doc_;
  std::optional<InstanceBundle> instance_;
};

const std::vector<std::string>& command_names();
std::string usage();

// Positional arguments: existing files are loaded, `pred|rel|pow` followed
// by key=value tokens describe an instance, anything else selects blocks
// by name.  Never throws; errors become exit-2 reports.
Report run(const std::string& command, const std::vector<std::string>& args, Workspace& ws,
           const Options& opt);

// Runs every pipeline of the loaded document (or the named ones) in
// canonical order, each in a fresh copy of the workspace.
std::vector<Report> run_pipelines(const Workspace& ws, const std::vector<std::string>& names,
                                  const Options& opt);

}  // namespace compcat::cli
