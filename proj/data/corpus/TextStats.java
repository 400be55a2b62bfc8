package corpus.text;

import java.util.HashMap;
import java.util.Map;
import java.util.TreeMap;

public class TextStats {
    private final String text;

    public TextStats(String text) {
        this.text = text == null ? "" : text;
    }

    public int wordCount() {
        int words = 0;
        boolean inWord = false;
        for (int i = 0; i < text.length(); i++) {
            boolean letter = Character.isLetterOrDigit(text.charAt(i));
            if (letter && !inWord) {
                words++;
            }
            inWord = letter;
        }
        return words;
    }

    public Map<String, Integer> frequencies() {
        Map<String, Integer> freq = new TreeMap<>();
        for (String token : text.toLowerCase().split("\\W+")) {
            if (token.isEmpty()) continue;
            freq.put(token, freq.getOrDefault(token, 0) + 1);
        }
        return freq;
    }

    public String mostCommonWord() {
        String best = "";
        int bestCount = 0;
        for (Map.Entry<String, Integer> e : frequencies().entrySet()) {
            if (e.getValue() > bestCount) {
                best = e.getKey();
                bestCount = e.getValue();
            }
        }
        return best;
    }

    public double averageWordLength() {
        int letters = 0;
        int words = 0;
        for (String w : text.split("\\s+")) {
            if (!w.isEmpty()) {
                letters += w.length();
                words++;
            }
        }
        return words == 0 ? 0.0 : (double) letters / words;
    }

    public int sentenceCount() {
        int count = 0;
        for (char c : text.toCharArray()) {
            if (c == '.' || c == '!' || c == '?') {
                count++;
            }
        }
        return Math.max(count, text.isBlank() ? 0 : 1);
    }

    public Map<Character, Integer> letterHistogram() {
        Map<Character, Integer> hist = new HashMap<>();
        for (char c : text.toCharArray()) {
            if (Character.isLetter(c)) {
                char lower = Character.toLowerCase(c);
                hist.merge(lower, 1, Integer::sum);
            }
        }
        return hist;
    }

    public double readabilityScore() {
        int words = wordCount();
        int sentences = sentenceCount();
        if (words == 0 || sentences == 0) {
            return 0.0;
        }
        double wordsPerSentence = (double) words / sentences;
        return 206.835 - 1.015 * wordsPerSentence - 84.6 * averageWordLength() / 4.7;
    }

    public String longestLine() {
        String longest = "";
        for (String line : text.split("\n")) {
            if (line.length() > longest.length()) {
                longest = line;
            }
        }
        return longest;
    }
}
