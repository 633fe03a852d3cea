#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adtcheck/checker/checker.hpp"
#include "adtcheck/frontend/parser.hpp"
#include "adtcheck/frontend/resolver.hpp"
#include "adtcheck/lowering/lowering.hpp"

namespace support {

inline std::string corpus(const std::string &rel) { return std::string(ADTCHECK_CORPUS_DIR) + "/" + rel; }

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string diagnostics_text(const adtcheck::Diagnostics &d) {
  std::string s;
  for (const auto &x : d)
    s += adtcheck::format_diagnostic(x) + "\n";
  return s;
}

/// A resolved and lowered program. Models point into it, so it is handed
/// out behind a unique_ptr and never moved.
struct Loaded {
  adtcheck::SubjectProgram program;
  adtcheck::lowering::LoweredProgram lowered;

  adtcheck::checker::Model model(const std::string &s = "",
                                 std::span<const adtcheck::lowering::FieldOverride> ov = {}) const {
    return adtcheck::checker::make_model(program, lowered, s.empty() ? program.structs.front().name : s, ov);
  }
  const adtcheck::StructDecl &decl(const std::string &s = "") const {
    return s.empty() ? program.structs.front() : *program.find_struct(s);
  }
};

inline std::unique_ptr<Loaded> load_sources(const std::vector<std::pair<std::string, std::string>> &sources) {
  std::vector<adtcheck::SourceFile> files;
  for (const auto &[text, path] : sources) {
    auto parsed = adtcheck::parse_program(text, path);
    if (!parsed)
      throw std::runtime_error("parse failed:\n" + diagnostics_text(parsed.diagnostics));
    files.push_back(std::move(*parsed));
  }
  auto prog = adtcheck::resolve(files);
  if (!prog)
    throw std::runtime_error("resolve failed:\n" + diagnostics_text(prog.diagnostics));
  auto low = adtcheck::lowering::lower_program(*prog);
  if (!low)
    throw std::runtime_error("lowering failed:\n" + diagnostics_text(low.diagnostics));
  auto out = std::make_unique<Loaded>();
  out->program = std::move(*prog);
  out->lowered = std::move(*low);
  return out;
}

inline std::unique_ptr<Loaded> load_source(const std::string &text, const std::string &path = "t.subj") {
  return load_sources({{text, path}});
}

inline std::unique_ptr<Loaded> load_file(const std::string &rel) {
  std::string path = corpus(rel);
  std::string name = path.substr(path.find_last_of('/') + 1);
  return load_sources({{read_file(path), name}});
}

/// Every `.subj` program in the corpus with the struct to check.
struct CorpusEntry {
  std::vector<std::string> files;
  std::string struct_name;
};

inline std::vector<CorpusEntry> corpus_programs() {
  return {{{"buffer.subj"}, "Buffer"},
          {{"mutant_offbyone.subj"}, "Buffer"},
          {{"mutant_fifo.subj"}, "Buffer"},
          {{"mutant_dropwrite.subj"}, "Buffer"},
          {{"inverted_rules/buffer_code.subj", "inverted_rules/buffer_protocol.subj"}, "Buffer"},
          {{"extra/counter.subj"}, "Counter"},
          {{"extra/two_structs.subj"}, "Stack"},
          {{"extra/two_structs.subj"}, "Queue"}};
}

inline std::unique_ptr<Loaded> load_entry(const CorpusEntry &e) {
  std::vector<std::pair<std::string, std::string>> srcs;
  for (const std::string &f : e.files)
    srcs.emplace_back(read_file(corpus(f)), f.substr(f.find_last_of('/') + 1));
  return load_sources(srcs);
}

} // namespace support
