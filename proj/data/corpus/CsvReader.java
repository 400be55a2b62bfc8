package corpus.io;

import java.io.BufferedReader;
import java.io.IOException;
import java.io.Reader;
import java.util.ArrayList;
import java.util.List;

public class CsvReader implements AutoCloseable {
    private final BufferedReader in;
    private int lineNumber = 0;
    private final char separator;

    public CsvReader(Reader reader, char separator) {
        this.in = new BufferedReader(reader);
        this.separator = separator;
    }

    public List<String> readRow() throws IOException {
        String line = in.readLine();
        if (line == null) {
            return null;
        }
        lineNumber++;
        return parseLine(line);
    }

    List<String> parseLine(String line) {
        List<String> fields = new ArrayList<>();
        StringBuilder field = new StringBuilder();
        boolean quoted = false;
        for (int i = 0; i < line.length(); i++) {
            char c = line.charAt(i);
            if (quoted) {
                if (c == '"' && i + 1 < line.length() && line.charAt(i + 1) == '"') {
                    field.append('"');
                    i++;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    field.append(c);
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == separator) {
                fields.add(field.toString());
                field.setLength(0);
            } else {
                field.append(c);
            }
        }
        fields.add(field.toString());
        return fields;
    }

    public List<List<String>> readAll() throws IOException {
        List<List<String>> rows = new ArrayList<>();
        List<String> row;
        while ((row = readRow()) != null) {
            rows.add(row);
        }
        return rows;
    }

    public int skipBlankLines() throws IOException {
        int skipped = 0;
        in.mark(8192);
        String line;
        while ((line = in.readLine()) != null && line.trim().isEmpty()) {
            skipped++;
            lineNumber++;
            in.mark(8192);
        }
        in.reset();
        return skipped;
    }

    public static String quote(String value) {
        if (value.indexOf(',') < 0 && value.indexOf('"') < 0) {
            return value;
        }
        return "\"" + value.replace("\"", "\"\"") + "\"";
    }

    public static double parseNumber(String text, double fallback) {
        try {
            return Double.parseDouble(text.trim());
        } catch (NumberFormatException e) {
            System.err.println("not a number: " + text);
            return fallback;
        }
    }

    public int getLineNumber() {
        return lineNumber;
    }

    @Override
    public void close() throws IOException {
        in.close();
    }
}
