#include "rcforecast/textio.hpp"

#include <stdexcept>

#include "rcforecast/trajectory.hpp"

namespace rcf {

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out;
    open_or_throw(out, path);
    out << "t";
    for (long c = 0; c < traj.cols(); ++c) out << ",x" << c;
    out << "\n";
    for (long r = 0; r < traj.rows(); ++r) {
        out << fmt_g17(traj.time_at(r));
        for (long c = 0; c < traj.cols(); ++c) out << "," << fmt_g17(traj.data(r, c));
        out << "\n";
    }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

long CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<long>(i);
    throw std::runtime_error("csv: missing column '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

double CsvTable::number(long row, long col) const {
    const std::string& cell = rows[row][col];
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != cell.size() || cell.empty())
        throw std::runtime_error("csv: non-numeric cell '" + cell + "' at line " +
                                 std::to_string(row + 2));
    return v;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    CsvTable table;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (lineno == 1) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size())
            throw std::runtime_error("csv: line " + std::to_string(lineno) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw std::runtime_error("csv: empty file " + path);
    return table;
}

}  // namespace rcf
