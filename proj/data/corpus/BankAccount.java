package corpus.bank;

import java.util.ArrayList;
import java.util.Collections;
import java.util.List;

public class BankAccount {
    private final String owner;
    private double balance;
    private final List<String> log = new ArrayList<>();
    private boolean frozen;

    public BankAccount(String owner, double opening) {
        if (opening < 0) {
            throw new IllegalArgumentException("negative opening balance");
        }
        this.owner = owner;
        this.balance = opening;
        log.add("open " + opening);
    }

    public void deposit(double amount) {
        if (frozen) {
            throw new IllegalStateException("account frozen");
        }
        if (amount <= 0) {
            throw new IllegalArgumentException("deposit must be positive");
        }
        balance += amount;
        log.add("deposit " + amount);
    }

    public boolean withdraw(double amount) {
        if (frozen || amount <= 0) {
            return false;
        }
        if (amount > balance) {
            log.add("declined " + amount);
            return false;
        }
        balance -= amount;
        log.add("withdraw " + amount);
        return true;
    }

    public void transferTo(BankAccount other, double amount) {
        if (other == this) {
            return;
        }
        if (withdraw(amount)) {
            other.deposit(amount);
            log.add("transfer to " + other.owner);
        } else {
            throw new IllegalStateException("insufficient funds for transfer");
        }
    }

    public double applyInterest(double yearlyRate, int months) {
        double monthly = yearlyRate / 12.0;
        double interest = 0.0;
        for (int m = 0; m < months; m++) {
            double gain = balance * monthly;
            interest += gain;
            balance += gain;
        }
        log.add("interest " + interest);
        return interest;
    }

    public List<String> history() {
        // callers must not modify the log
        return Collections.unmodifiableList(log);
    }

    public void freeze(String reason) {
        if (frozen) {
            return;
        }
        frozen = true;
        log.add("frozen: " + reason);
    }

    public String statement() {
        StringBuilder sb = new StringBuilder();
        sb.append("Owner: ").append(owner).append('\n');
        for (String entry : log) {
            sb.append("  ").append(entry).append('\n');
        }
        sb.append("Balance: ").append(String.format("%.2f", balance));
        return sb.toString();
    }
}
