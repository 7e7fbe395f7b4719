#pragma once

#include <istream>
#include <string>
#include <vector>

#include "htc/classifier.hpp"
#include "htc/taxonomy.hpp"

namespace htc {

// Where documents come from and which columns/fields mean what. Columns are
// header names when the file has a header, otherwise 0-based indices given as
// digit strings. Multiple text columns are joined with `text_join` (Amazon
// title + description, for example).
struct DatasetSpec {
  std::string path;
  std::string format = "csv";  // csv | tsv | jsonl
  char delimiter = ',';
  bool has_header = true;
  std::vector<std::string> text_columns;
  std::vector<std::string> gold_columns;
  std::string id_column;  // optional; row index otherwise
  std::string text_join = " ";
};

// Quoted-field delimited reader (embedded delimiters, doubled quotes and
// newlines inside quoted fields). Throws ParseError on an unterminated quote.
std::vector<std::vector<std::string>> read_delimited(std::istream& in,
                                                     char delimiter);

// Documents with normalized gold labels. Throws ParseError (with the row
// number) on unreadable files, missing columns, or empty text.
std::vector<Document> load_documents(const DatasetSpec& spec);

// Taxonomy induced from the documents' gold columns.
Taxonomy induce_taxonomy(const std::vector<Document>& docs);

// Explicit taxonomy file: one root-to-leaf path per row.
Taxonomy load_taxonomy_file(const std::string& path, char delimiter,
                            bool has_header);

// First `sample_size` positions of a seeded shuffle of [0, total), returned
// in ascending order; everything when sample_size is 0 or >= total.
std::vector<std::size_t> sample_indices(std::size_t total, std::size_t sample_size,
                                        unsigned seed);

}  // namespace htc
